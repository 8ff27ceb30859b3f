#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cascade/linalg.hpp"

namespace cascade {

/// Initial-condition cases. I..IV drive the classical-field model, V..VIII
/// the quantized one; in both families the atom starts in a single level.
enum class CaseId { I, II, III, IV, V, VI, VII, VIII };

std::string_view to_string(CaseId c);
std::optional<CaseId> parse_case(std::string_view roman);

/// Level (1..4) initially occupied by the case.
int initial_level(CaseId c);
bool is_semiclassical_case(CaseId c);

/// Time samples, strictly increasing and starting at 0.
class TimeGrid {
 public:
  /// Throws EmptyGrid for no samples and InvalidGrid otherwise.
  explicit TimeGrid(std::vector<double> times);

  /// `steps` samples uniformly covering [0, t_max].
  static TimeGrid uniform(double t_max, std::size_t steps);

  const std::vector<double>& times() const { return times_; }
  std::size_t size() const { return times_.size(); }
  double back() const { return times_.back(); }

 private:
  std::vector<double> times_;
};

/// Populations |C_k(t)|^2 of the four levels on a time grid.
struct ProbabilityTrace {
  std::vector<double> times;
  std::array<std::vector<double>, 4> p;

  explicit ProbabilityTrace(std::vector<double> t = {});

  std::size_t size() const { return times.size(); }

  /// Series for level 1..4.
  const std::vector<double>& level(int level) const;

  void set(std::size_t i, const std::array<double, 4>& probs);

  /// Largest |p1+p2+p3+p4 - 1| over the grid.
  double normalization_defect() const;
};

/// max over t of |a.level(i)(t) - b.level(j)(t)|; grids must match.
double max_series_difference(const ProbabilityTrace& a, int level_a, const ProbabilityTrace& b, int level_b);

/// max over i and t of |a.level(i) - b.level(5 - i)|.
double mirror_defect(const ProbabilityTrace& a, const ProbabilityTrace& b);

}  // namespace cascade
