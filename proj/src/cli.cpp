#include "cascade/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "cascade/errors.hpp"
#include "cascade/io.hpp"
#include "cascade/linalg.hpp"
#include "cascade/quantized.hpp"
#include "cascade/semiclassical.hpp"

namespace cascade::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string_view to_string(Model m) {
  switch (m) {
    case Model::semiclassical:
      return "semiclassical";
    case Model::quantized:
      return "quantized";
    case Model::coherent:
      return "coherent";
  }
  return "?";
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(v))
    throw ConfigError(key, "expected a finite number, got '" + text + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) throw ConfigError(key, "expected an integer, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + text + "'");
}

std::string format_list(const std::array<double, 4>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += format_double(v[i]);
  }
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  f << text;
  f.flush();
  if (!f) throw std::ios_base::failure("failed writing " + path.string());
}

}  // namespace

Settings parse_config_text(const std::string& text) {
  Settings out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config", "line " + std::to_string(line_no) + " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("config", "line " + std::to_string(line_no) + " has an empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

RunConfig config_from_settings(const Settings& settings) {
  RunConfig c;
  bool have_model = false;
  bool have_case = false;
  for (const auto& [key, value] : settings) {
    if (key == "model") {
      if (value == "semiclassical")
        c.model = Model::semiclassical;
      else if (value == "quantized")
        c.model = Model::quantized;
      else if (value == "coherent")
        c.model = Model::coherent;
      else
        throw ConfigError(key, "expected semiclassical, quantized or coherent, got '" + value + "'");
      have_model = true;
    } else if (key == "case") {
      const auto parsed = parse_case(value);
      if (!parsed) throw ConfigError(key, "expected a roman numeral I..VIII, got '" + value + "'");
      c.case_id = *parsed;
      have_case = true;
    } else if (key == "kappa" || key == "g") {
      c.coupling = parse_real(key, value);
    } else if (key == "delta") {
      c.delta = parse_real(key, value);
    } else if (key == "n") {
      c.n = parse_int(key, value);
    } else if (key == "nbar") {
      c.nbar = parse_real(key, value);
    } else if (key == "epsilon") {
      c.epsilon = parse_real(key, value);
    } else if (key == "tmax") {
      c.t_max = parse_real(key, value);
      if (!(c.t_max > 0.0)) throw ConfigError(key, "must be positive");
    } else if (key == "steps") {
      c.steps = parse_int(key, value);
      if (c.steps < 2) throw ConfigError(key, "must be at least 2");
    } else if (key == "format") {
      if (value == "csv")
        c.format = Format::csv;
      else if (value == "json")
        c.format = Format::json;
      else
        throw ConfigError(key, "expected csv or json, got '" + value + "'");
    } else if (key == "output") {
      if (value.empty()) throw ConfigError(key, "must not be empty");
      c.output = value;
    } else if (key == "weighting") {
      if (value == "paper")
        c.weighting = WeightingMode::paper;
      else if (value == "physical")
        c.weighting = WeightingMode::physical;
      else
        throw ConfigError(key, "expected paper or physical, got '" + value + "'");
    } else if (key == "renormalize") {
      c.renormalize = parse_bool(key, value);
    } else {
      throw ConfigError(key, "unknown setting");
    }
  }
  if (!have_model) throw ConfigError("model", "missing (semiclassical, quantized or coherent)");
  if (!have_case) c.case_id = c.model == Model::semiclassical ? CaseId::I : CaseId::V;
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  const bool semiclassical = c.model == Model::semiclassical;
  if (semiclassical != is_semiclassical_case(c.case_id))
    throw ConfigError("case", "case " + std::string(cascade::to_string(c.case_id)) + " does not belong to the " +
                                  std::string(to_string(c.model)) + " model (I-IV: semiclassical, V-VIII: quantized/coherent)");
  if (!std::isfinite(c.coupling) || !(c.coupling > 0.0))
    throw ConfigError(semiclassical ? "kappa" : "g", "must be positive");
  if (!std::isfinite(c.delta)) throw ConfigError("delta", "must be finite");
  if (c.steps != 0 && c.steps < 2) throw ConfigError("steps", "must be at least 2");
  if (!std::isfinite(c.t_max) || c.t_max < 0.0) throw ConfigError("tmax", "must be positive");

  if (c.model == Model::quantized) {
    if (c.n < 0) throw ConfigError("n", "photon index must be >= 0");
    if (c.case_id == CaseId::VIII && c.n == 0)
      throw ConfigError("n", "invalid sector n = 0 for case VIII: the initial state |n-1,4> does not exist");
  }
  if (c.model == Model::coherent) {
    if (!std::isfinite(c.nbar) || c.nbar < 0.0) throw ConfigError("nbar", "must be >= 0");
    if (!(c.epsilon > 1e-16 && c.epsilon < 0.5)) throw ConfigError("epsilon", "must lie in (1e-16, 0.5)");
    if (c.delta != 0.0) throw ConfigError("delta", "coherent-state runs are resonant; delta must be 0");
  }
}

double default_t_max(const RunConfig& c) {
  if (c.t_max > 0.0) return c.t_max;
  if (c.model == Model::coherent) return 3.0 * nominal_revival_time(c.nbar > 0.0 ? c.nbar : 1.0, c.coupling);
  return 4.0 * kPi / c.coupling;
}

int default_steps(const RunConfig& c) {
  if (c.steps != 0) return c.steps;
  return c.model == Model::coherent ? 4001 : 2001;
}

RunResult simulate(const RunConfig& c) {
  validate(c);
  const double t_max = default_t_max(c);
  const int steps = default_steps(c);
  const TimeGrid grid = TimeGrid::uniform(t_max, static_cast<std::size_t>(steps));

  nlohmann::json meta = {{"model", std::string(to_string(c.model))},
                         {"case", std::string(cascade::to_string(c.case_id))},
                         {"t_max", t_max},
                         {"steps", steps}};
  switch (c.model) {
    case Model::semiclassical: {
      const auto p = SemiclassicalParams::with_detuning(c.delta, c.coupling);
      meta["kappa"] = c.coupling;
      meta["delta"] = c.delta;
      return {probability_trace(c.case_id, p, grid), meta};
    }
    case Model::quantized: {
      meta["n"] = c.n;
      meta["g"] = c.coupling;
      meta["delta"] = c.delta;
      return {sector_probability_trace(c.case_id, {c.n, c.coupling, c.delta}, grid), meta};
    }
    case Model::coherent: {
      const CoherentField field = poisson_weights(c.nbar, c.epsilon);
      AveragedTrace avg =
          coherent_probability_trace(c.case_id, field, c.coupling, grid, {c.weighting, c.renormalize});
      meta.update(meta_to_json(avg.meta));
      return {std::move(avg.trace), meta};
    }
  }
  throw ConfigError("model", "unsupported");
}

std::string render(const RunResult& result, Format format) {
  if (format == Format::json) return trace_to_json(result.trace, result.meta).dump() + "\n";
  std::ostringstream s;
  write_csv(s, result.trace);
  return s.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result{ProbabilityTrace{}, {}};
  try {
    result = simulate(config);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }

  const std::string text = render(result, config.format);
  try {
    if (config.output == "-") {
      out << text;
      out.flush();
    } else {
      write_file(config.output, text);
    }
  } catch (const std::exception& e) {
    err << "I/O failure: " << e.what() << "\n";
    return kExitIo;
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  err << "model=" << to_string(config.model) << " case=" << cascade::to_string(config.case_id);
  if (config.model == Model::coherent) err << " n_max=" << result.meta["n_max"].get<int>();
  err << " samples=" << result.trace.size() << " wall=" << wall << "s\n";
  return kExitOk;
}

namespace {

struct Panel {
  std::string file;
  std::string figure;
  RunConfig config;
  int level = 0;  // highlighted level for the coherent panels, 0 = all
};

std::vector<Panel> figure_panels() {
  std::vector<Panel> panels;
  const char letters[] = "abcdefgh";

  for (int k = 0; k < 4; ++k) {
    RunConfig c;
    c.model = Model::semiclassical;
    c.case_id = static_cast<CaseId>(k);
    panels.push_back({std::string("fig1") + letters[k] + ".csv", "1", c, 0});
  }
  for (int k = 0; k < 4; ++k) {
    RunConfig c;
    c.model = Model::quantized;
    c.case_id = static_cast<CaseId>(4 + k);
    c.n = 1;
    panels.push_back({std::string("fig2") + letters[k] + ".csv", "2", c, 0});
  }
  const std::array<std::pair<int, std::array<CaseId, 2>>, 2> coherent{
      {{3, {CaseId::V, CaseId::VIII}}, {4, {CaseId::VI, CaseId::VII}}}};
  for (const auto& [fig, cases] : coherent) {
    for (int half = 0; half < 2; ++half) {
      for (int level = 1; level <= 4; ++level) {
        RunConfig c;
        c.model = Model::coherent;
        c.case_id = cases[static_cast<std::size_t>(half)];
        const char letter = letters[half * 4 + level - 1];
        panels.push_back({"fig" + std::to_string(fig) + letter + ".csv", std::to_string(fig), c, level});
      }
    }
  }
  return panels;
}

std::string plot_script(const std::vector<Panel>& panels) {
  std::string s = "# gnuplot script for the figure panels\nset datafile separator ','\nset key autotitle columnhead\n";
  s += "set terminal pngcairo size 800,500\n";
  for (const auto& p : panels) {
    const std::string stem = p.file.substr(0, p.file.size() - 4);
    s += "set output '" + stem + ".png'\n";
    if (p.level == 0) {
      s += "plot '" + p.file + "' using 1:2 with lines lc 'red', '' using 1:3 with lines lc 'green', "
           "'' using 1:4 with lines lc 'blue', '' using 1:5 with lines lc 'black'\n";
    } else {
      static const char* colors[] = {"red", "green", "blue", "black"};
      s += "plot '" + p.file + "' using 1:" + std::to_string(p.level + 1) + " with lines lc '" +
           colors[p.level - 1] + "'\n";
    }
  }
  return s;
}

}  // namespace

int reproduce_figures(const std::filesystem::path& outdir, bool with_plot_script, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  try {
    std::filesystem::create_directories(outdir);
  } catch (const std::exception& e) {
    err << "I/O failure: " << e.what() << "\n";
    return kExitIo;
  }

  const std::vector<Panel> panels = figure_panels();
  std::map<std::string, RunResult> cache;  // coherent panels share one trace per case
  nlohmann::json manifest = {{"panels", nlohmann::json::array()}};

  for (const auto& panel : panels) {
    const std::string key = std::string(to_string(panel.config.model)) + "/" +
                            std::string(cascade::to_string(panel.config.case_id));
    auto it = cache.find(key);
    if (it == cache.end()) {
      try {
        it = cache.emplace(key, simulate(panel.config)).first;
      } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
      }
    }
    try {
      write_file(outdir / panel.file, render(it->second, Format::csv));
    } catch (const std::exception& e) {
      err << "I/O failure: " << e.what() << "\n";
      return kExitIo;
    }
    nlohmann::json entry = {{"file", panel.file}, {"figure", panel.figure}, {"config", it->second.meta}};
    entry["level"] = panel.level == 0 ? nlohmann::json("all") : nlohmann::json(panel.level);
    manifest["panels"].push_back(entry);
  }

  try {
    write_file(outdir / "manifest.json", manifest.dump(2) + "\n");
    if (with_plot_script) write_file(outdir / "plot.gp", plot_script(panels));
  } catch (const std::exception& e) {
    err << "I/O failure: " << e.what() << "\n";
    return kExitIo;
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  err << "reproduce-figures: " << panels.size() << " panels in " << outdir.string() << " wall=" << wall << "s\n";
  return kExitOk;
}

namespace {

int print_eigen(std::optional<int> n, double coupling, double delta, std::ostream& out) {
  if (n) {
    if (*n < 0) throw ConfigError("n", "photon index must be >= 0");
    if (!(coupling > 0.0)) throw ConfigError("g", "must be positive");
    const SectorParams p{*n, coupling, delta};
    const auto numeric = hermitian_eigensystem(sector_hamiltonian(p)).eigenvalues;
    out << "model quantized n=" << *n << " g=" << format_double(coupling) << " delta=" << format_double(delta)
        << "\n";
    if (delta == 0.0) {
      const auto closed = sector_eigenvalues(*n, coupling);
      out << "b " << format_double(closed.b) << "\n";
      out << "closed_form " << format_list(closed.lambda) << "\n";
    }
    out << "numerical " << format_list(numeric) << "\n";
    return kExitOk;
  }
  if (!(coupling > 0.0)) throw ConfigError("kappa", "must be positive");
  const auto p = SemiclassicalParams::with_detuning(delta, coupling);
  const auto numeric = hermitian_eigensystem(rotating_frame_hamiltonian(p)).eigenvalues;
  out << "model semiclassical kappa=" << format_double(coupling) << " delta=" << format_double(delta) << "\n";
  if (delta == 0.0) out << "closed_form " << format_list({-3 * coupling, -coupling, coupling, 3 * coupling}) << "\n";
  out << "numerical " << format_list(numeric) << "\n";
  return kExitOk;
}

int print_angles(std::optional<int> n, bool printed, std::ostream& out) {
  EulerAngles a;
  if (n) {
    if (*n < 1) throw ConfigError("n", "closed-form angles need n >= 1");
    a = quantized_euler_angles(*n, printed ? AngleFormula::as_printed : AngleFormula::corrected);
    out << "model quantized n=" << *n << " formula=" << (printed ? "as_printed" : "corrected") << "\n";
  } else {
    a = semiclassical_euler_angles();
    out << "model semiclassical\n";
  }
  for (int i = 1; i <= 6; ++i) out << "theta" << i << " " << format_double(a(i)) << "\n";
  return kExitOk;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rabi dynamics of an equidistant four-level ladder atom", "cascade4"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Compute one probability trace");
  std::map<std::string, std::string> flags;
  std::vector<std::pair<std::string, CLI::Option*>> sim_opts;
  sim_opts.emplace_back("model", sim->add_option("model", flags["model"], "semiclassical | quantized | coherent"));
  sim_opts.emplace_back("case", sim->add_option("--case", flags["case"], "Initial condition I..VIII"));
  sim_opts.emplace_back("kappa", sim->add_option("--kappa", flags["kappa"], "Classical coupling"));
  sim_opts.emplace_back("g", sim->add_option("--g", flags["g"], "Atom-field coupling"));
  sim_opts.emplace_back("delta", sim->add_option("--delta", flags["delta"], "Detuning"));
  sim_opts.emplace_back("n", sim->add_option("--n", flags["n"], "Photon index of the sector"));
  sim_opts.emplace_back("nbar", sim->add_option("--nbar", flags["nbar"], "Mean photon number"));
  sim_opts.emplace_back("epsilon", sim->add_option("--epsilon", flags["epsilon"], "Poisson tail tolerance"));
  sim_opts.emplace_back("tmax", sim->add_option("--tmax", flags["tmax"], "End of the time grid"));
  sim_opts.emplace_back("steps", sim->add_option("--steps", flags["steps"], "Number of samples (>= 2)"));
  sim_opts.emplace_back("format", sim->add_option("--format", flags["format"], "csv | json"));
  sim_opts.emplace_back("output", sim->add_option("-o,--output", flags["output"], "Output path, - for stdout"));
  sim_opts.emplace_back("weighting", sim->add_option("--weighting", flags["weighting"], "paper | physical"));
  bool renormalize = false;
  auto* renorm_opt = sim->add_flag("--renormalize", renormalize, "Renormalize truncated coherent sums");
  std::string config_path;
  auto* config_opt = sim->add_option("--config", config_path, "key=value file; flags take precedence");

  // reproduce-figures
  auto* figs = app.add_subcommand("reproduce-figures", "Write every figure panel as CSV plus a manifest");
  std::string outdir;
  figs->add_option("--outdir", outdir, "Output directory")->required();
  bool with_plot = false;
  figs->add_flag("--plot-script", with_plot, "Also write a gnuplot script");

  // eigen
  auto* eig = app.add_subcommand("eigen", "Print resonance or sector spectra");
  int eig_n = 0;
  double eig_g = 1.0;
  double eig_kappa = 1.0;
  double eig_delta = 0.0;
  auto* eig_n_opt = eig->add_option("--n", eig_n, "Sector photon index (selects the quantized model)");
  eig->add_option("--g", eig_g, "Atom-field coupling");
  eig->add_option("--kappa", eig_kappa, "Classical coupling");
  eig->add_option("--delta", eig_delta, "Detuning");

  // angles
  auto* ang = app.add_subcommand("angles", "Print the diagonalizing Euler angles");
  int ang_n = 0;
  bool printed = false;
  auto* ang_n_opt = ang->add_option("--n", ang_n, "Sector photon index (omit for the classical field)");
  ang->add_flag("--printed", printed, "Evaluate the uncorrected historical expressions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (*sim) {
      Settings settings;
      if (config_opt->count() > 0) {
        std::ifstream f(config_path);
        if (!f) throw ConfigError("config", "cannot read " + config_path);
        std::stringstream buf;
        buf << f.rdbuf();
        settings = parse_config_text(buf.str());
      }
      for (const auto& [key, opt] : sim_opts)
        if (opt->count() > 0) settings[key] = flags[key];
      if (renorm_opt->count() > 0) settings["renormalize"] = renormalize ? "true" : "false";
      return run(config_from_settings(settings), out, err);
    }
    if (*figs) return reproduce_figures(outdir, with_plot, err);
    if (*eig) {
      const double coupling = eig_n_opt->count() > 0 ? eig_g : eig_kappa;
      return print_eigen(eig_n_opt->count() > 0 ? std::optional<int>(eig_n) : std::nullopt, coupling, eig_delta, out);
    }
    if (*ang) return print_angles(ang_n_opt->count() > 0 ? std::optional<int>(ang_n) : std::nullopt, printed, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}

}  // namespace cascade::cli
