#pragma once

// Command-line front end. Everything is reachable through main_entry so the
// test suite can drive the tool without spawning processes.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cascade/coherent.hpp"
#include "cascade/trace.hpp"

namespace cascade::cli {

/// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

enum class Model { semiclassical, quantized, coherent };
enum class Format { csv, json };

struct RunConfig {
  Model model = Model::semiclassical;
  CaseId case_id = CaseId::I;
  double coupling = 1.0;  ///< kappa (semiclassical) or g
  double delta = 0.0;
  int n = 1;
  double nbar = 48.0;
  double epsilon = 1e-8;
  double t_max = 0.0;  ///< 0 selects the model default
  int steps = 0;       ///< 0 selects the model default
  Format format = Format::csv;
  std::string output = "-";  ///< "-" is standard output
  WeightingMode weighting = WeightingMode::paper;
  bool renormalize = false;
};

/// Invalid configuration; `field()` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Settings as key -> text, the common form of config-file lines and flags.
using Settings = std::map<std::string, std::string>;

/// Parse `key = value` lines; '#' starts a comment. Throws ConfigError.
Settings parse_config_text(const std::string& text);

/// Build and validate a RunConfig; unknown keys and bad values throw
/// ConfigError naming the key.
RunConfig config_from_settings(const Settings& settings);

/// Throws ConfigError for every inconsistent combination.
void validate(const RunConfig& config);

/// Default horizon: 4 pi / kappa, 4 pi / g, or 3 * 2 pi sqrt(nbar) / g.
double default_t_max(const RunConfig& config);
int default_steps(const RunConfig& config);

struct RunResult {
  ProbabilityTrace trace;
  nlohmann::json meta;
};

/// Computes the trace for a validated configuration (library errors propagate).
RunResult simulate(const RunConfig& config);

/// Serialize in the configured format.
std::string render(const RunResult& result, Format format);

/// Run one simulation and write its artifact; returns an exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Write the 24 figure panels, manifest.json and optionally plot.gp.
int reproduce_figures(const std::filesystem::path& outdir, bool plot_script, std::ostream& err);

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cascade::cli
