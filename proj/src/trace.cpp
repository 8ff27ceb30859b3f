#include "cascade/trace.hpp"

#include <algorithm>
#include <cmath>

#include "cascade/errors.hpp"

namespace cascade {

namespace {

constexpr std::array<std::string_view, 8> kCaseNames{"I", "II", "III", "IV", "V", "VI", "VII", "VIII"};

}  // namespace

std::string_view to_string(CaseId c) { return kCaseNames[static_cast<std::size_t>(c)]; }

std::optional<CaseId> parse_case(std::string_view roman) {
  for (std::size_t i = 0; i < kCaseNames.size(); ++i)
    if (kCaseNames[i] == roman) return static_cast<CaseId>(i);
  return std::nullopt;
}

int initial_level(CaseId c) { return static_cast<int>(c) % 4 + 1; }

bool is_semiclassical_case(CaseId c) { return static_cast<int>(c) < 4; }

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty()) throw EmptyGrid("time grid has no samples");
  if (times_.front() != 0.0) throw InvalidGrid("time grid must start at 0");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i])) throw InvalidGrid("time grid contains a non-finite sample");
    if (i > 0 && !(times_[i] > times_[i - 1])) throw InvalidGrid("time grid must be strictly increasing");
  }
}

TimeGrid TimeGrid::uniform(double t_max, std::size_t steps) {
  if (steps == 0) throw EmptyGrid("time grid has no samples");
  if (steps == 1) return TimeGrid({0.0});
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InvalidGrid("t_max must be positive and finite");
  std::vector<double> t(steps);
  const double denom = static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) t[i] = t_max * (static_cast<double>(i) / denom);
  return TimeGrid(std::move(t));
}

ProbabilityTrace::ProbabilityTrace(std::vector<double> t) : times(std::move(t)) {
  for (auto& s : p) s.assign(times.size(), 0.0);
}

const std::vector<double>& ProbabilityTrace::level(int level) const {
  if (level < 1 || level > 4) throw InvalidParameter("level must be in 1..4");
  return p[static_cast<std::size_t>(level - 1)];
}

void ProbabilityTrace::set(std::size_t i, const std::array<double, 4>& probs) {
  for (std::size_t k = 0; k < 4; ++k) p[k][i] = probs[k];
}

double ProbabilityTrace::normalization_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    worst = std::max(worst, std::abs(p[0][i] + p[1][i] + p[2][i] + p[3][i] - 1.0));
  return worst;
}

double max_series_difference(const ProbabilityTrace& a, int level_a, const ProbabilityTrace& b, int level_b) {
  if (a.size() != b.size()) throw InvalidGrid("traces have different lengths");
  const auto& x = a.level(level_a);
  const auto& y = b.level(level_b);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

double mirror_defect(const ProbabilityTrace& a, const ProbabilityTrace& b) {
  double worst = 0.0;
  for (int level = 1; level <= 4; ++level) worst = std::max(worst, max_series_difference(a, level, b, 5 - level));
  return worst;
}

}  // namespace cascade
