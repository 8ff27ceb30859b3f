#include "cascade/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cascade/errors.hpp"
#include "cascade/quantized.hpp"

namespace cascade {

namespace {

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

// Photon number of the initial sector state minus the sector index.
int initial_photon_shift(CaseId c) {
  switch (c) {
    case CaseId::V:
      return 2;
    case CaseId::VI:
      return 1;
    case CaseId::VII:
      return 0;
    case CaseId::VIII:
      return -1;
    default:
      throw InvalidParameter("case " + std::string(to_string(c)) + " belongs to the classical-field model");
  }
}

}  // namespace

std::string_view to_string(WeightingMode m) { return m == WeightingMode::paper ? "paper" : "physical"; }

CoherentField poisson_weights(double nbar, double epsilon) {
  if (!(epsilon > 1e-16 && epsilon < 0.5)) throw InvalidTolerance("epsilon must lie in (1e-16, 0.5)");
  if (!std::isfinite(nbar) || nbar < 0.0) throw InvalidParameter("mean photon number must be finite and >= 0");

  CoherentField field;
  field.nbar = nbar;
  field.epsilon = epsilon;

  CompensatedSum total;
  if (nbar == 0.0) {
    field.weights = {1.0};
    total.add(1.0);
  } else {
    const double log_nbar = std::log(nbar);
    for (int n = 0;; ++n) {
      const double w = std::exp(-nbar + n * log_nbar - std::lgamma(n + 1.0));
      field.weights.push_back(w);
      total.add(w);
      if (total.value() >= 1.0 - epsilon) break;
      if (n > nbar && w < 1e-300)
        throw InvalidTolerance("epsilon is below the attainable precision of the weight sum");
    }
  }
  field.n_max = static_cast<int>(field.weights.size()) - 1;
  field.total_weight = total.value();
  return field;
}

AveragedTrace coherent_probability_trace(CaseId c, const CoherentField& field, double g, const TimeGrid& grid,
                                         const CoherentOptions& options) {
  const int shift = initial_photon_shift(c);
  if (!std::isfinite(g) || !(g > 0.0)) throw InvalidParameter("coupling g must be positive and finite");

  AveragedTrace out{ProbabilityTrace(grid.times()), {}};
  auto& meta = out.meta;
  meta.case_id = c;
  meta.nbar = field.nbar;
  meta.epsilon = field.epsilon;
  meta.n_max = field.n_max;
  meta.g = g;
  meta.mode = options.mode;
  meta.renormalized = options.renormalize;
  meta.total_weight = field.total_weight;

  const std::size_t points = grid.size();
  std::array<std::vector<CompensatedSum>, 4> acc;
  for (auto& a : acc) a.assign(points, {});

  CompensatedSum skipped;
  bool any_term = false;
  for (int m = 0; m <= field.n_max; ++m) {
    const double w = field.weights[static_cast<std::size_t>(m)];
    const int n = options.mode == WeightingMode::paper ? m : m - shift;
    const bool physical_sector = n >= 0 && !(c == CaseId::VIII && n == 0);
    if (!physical_sector) {
      skipped.add(w);
      meta.skipped_sectors.push_back(n);
      continue;
    }
    any_term = true;
    const ProbabilityTrace sector = sector_probability_trace(c, {n, g, 0.0}, grid);
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t i = 0; i < points; ++i) acc[k][i].add(w * sector.p[k][i]);
  }
  if (!any_term) throw InvalidSector("no sector of the weight table is physical for this case");

  meta.skipped_weight = skipped.value();
  const double scale = options.renormalize ? 1.0 / (meta.total_weight - meta.skipped_weight) : 1.0;
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < points; ++i) out.trace.p[k][i] = acc[k][i].value() * scale;
  return out;
}

double nominal_revival_time(double nbar, double g) { return 2.0 * std::numbers::pi * std::sqrt(nbar) / g; }

std::vector<double> oscillation_envelope(const std::vector<double>& times, const std::vector<double>& values,
                                         double window) {
  const std::size_t n = values.size();
  if (times.size() != n) throw InvalidGrid("times and values differ in length");
  std::vector<double> env(n, 0.0);
  if (n == 0) return env;

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);

  const double half = 0.5 * window;
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (times[lo] < times[i] - half) ++lo;
    while (hi + 1 < n && times[hi + 1] <= times[i] + half) ++hi;
    double top = values[lo] - mean;
    double bottom = top;
    for (std::size_t j = lo; j <= hi; ++j) {
      top = std::max(top, values[j] - mean);
      bottom = std::min(bottom, values[j] - mean);
    }
    env[i] = top - bottom;
  }
  return env;
}

CollapseRevivalMetrics collapse_revival_metrics(const AveragedTrace& trace, int level) {
  const auto& meta = trace.meta;
  if (!(meta.nbar > 0.0) || !(meta.g > 0.0))
    throw InvalidParameter("collapse/revival metrics need nbar > 0 and g > 0");
  const double t_r = nominal_revival_time(meta.nbar, meta.g);
  const auto& times = trace.trace.times;
  if (times.empty() || times.back() < 1.5 * t_r)
    throw GridTooShort("trace must cover [0, " + std::to_string(1.5 * t_r) + "]");

  const double window = std::max(t_r / 20.0, 4.0 * std::numbers::pi / (meta.g * std::sqrt(meta.nbar + 1.0)));
  const std::vector<double> env = oscillation_envelope(times, trace.trace.level(level), window);

  CollapseRevivalMetrics m;
  m.collapse_floor = std::numeric_limits<double>::infinity();
  double best = -1.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    if (t >= t_r / 6.0 && t <= t_r / 3.0) m.collapse_floor = std::min(m.collapse_floor, env[i]);
    if (t > t_r / 3.0 && t <= 1.5 * t_r && env[i] > best) {
      best = env[i];
      m.revival_peak_time = t;
    }
  }
  if (!std::isfinite(m.collapse_floor)) throw GridTooShort("grid has no samples inside the collapse window");
  m.revival_amplitude = best;
  return m;
}

}  // namespace cascade
