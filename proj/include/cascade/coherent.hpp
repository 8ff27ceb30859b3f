#pragma once

// Cavity mode prepared in a coherent state: Poisson-weighted sums of sector
// populations, and a collapse/revival diagnostic for the averaged traces.

#include <string_view>
#include <vector>

#include "cascade/trace.hpp"

namespace cascade {

/// How Poisson weights are attached to sector terms.
enum class WeightingMode {
  /// w_n multiplies every population of sector n, whatever the case.
  paper,
  /// w_m multiplies the sector whose initial state holds m photons
  /// (case V: m = n+2, VI: n+1, VII: n, VIII: n-1).
  physical,
};

std::string_view to_string(WeightingMode m);

/// Truncated Poisson photon-number distribution.
struct CoherentField {
  double nbar = 0.0;
  double epsilon = 1e-8;
  int n_max = 0;                ///< smallest index with sum_{n<=n_max} w_n >= 1 - epsilon
  std::vector<double> weights;  ///< w_0 .. w_{n_max}
  double total_weight = 0.0;    ///< compensated sum of `weights`
};

/// Weights w_n = exp(-nbar) nbar^n / n!, evaluated in log space. Throws
/// InvalidTolerance unless 1e-16 < epsilon < 0.5, InvalidParameter for a
/// negative or non-finite nbar.
CoherentField poisson_weights(double nbar, double epsilon = 1e-8);

struct CoherentOptions {
  WeightingMode mode = WeightingMode::paper;
  /// Divide by the weight actually summed, so rows add to one.
  bool renormalize = false;
};

struct AveragedTraceMeta {
  CaseId case_id = CaseId::V;
  double nbar = 0.0;
  double epsilon = 0.0;
  int n_max = 0;
  double g = 1.0;
  WeightingMode mode = WeightingMode::paper;
  bool renormalized = false;
  double total_weight = 0.0;    ///< sum of the truncated weight table
  double skipped_weight = 0.0;  ///< weight of terms with no physical sector
  std::vector<int> skipped_sectors;
};

struct AveragedTrace {
  ProbabilityTrace trace;
  AveragedTraceMeta meta;
};

/// <P_k(t)> = sum_n w_n |C_k^(n)(t)|^2 with the case's initial level in every
/// sector. Terms are accumulated in increasing n with compensated summation,
/// so the result is reproducible bit for bit.
AveragedTrace coherent_probability_trace(CaseId c, const CoherentField& field, double g, const TimeGrid& grid,
                                         const CoherentOptions& options = {});

/// 2 pi sqrt(nbar) / g.
double nominal_revival_time(double nbar, double g);

struct CollapseRevivalMetrics {
  double collapse_floor = 0.0;
  double revival_peak_time = 0.0;
  double revival_amplitude = 0.0;
};

/// Envelope diagnostics of one level of an averaged trace.
///
/// The envelope is the sliding-window max - min of the mean-removed series,
/// with window width max(t_R / 20, 4 pi / (g sqrt(nbar + 1))) where t_R is the
/// nominal revival time. The collapse floor is the smallest envelope value on
/// [t_R / 6, t_R / 3] (middle third of the pre-revival window [0, t_R / 2]);
/// the revival is the envelope maximum on (t_R / 3, 1.5 t_R].
/// Throws GridTooShort if the trace ends before 1.5 t_R.
CollapseRevivalMetrics collapse_revival_metrics(const AveragedTrace& trace, int level);

/// Sliding-window max - min of `values - mean(values)` with the given full
/// window width in time units.
std::vector<double> oscillation_envelope(const std::vector<double>& times, const std::vector<double>& values,
                                         double window);

}  // namespace cascade
