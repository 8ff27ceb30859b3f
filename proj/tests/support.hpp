#pragma once

// Independent reference computations for the unit tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "cascade/linalg.hpp"
#include "cascade/trace.hpp"

namespace cascade::test {

inline ComplexMatrix4 random_hermitian(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> d(0.0, scale);
  ComplexMatrix4 h;
  for (std::size_t i = 0; i < 4; ++i) {
    h(i, i) = d(rng);
    for (std::size_t j = i + 1; j < 4; ++j) {
      h(i, j) = Complex(d(rng), d(rng));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

inline AmplitudeVector random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  AmplitudeVector v;
  for (std::size_t i = 0; i < 4; ++i) v[i] = Complex(d(rng), d(rng));
  return v.normalized();
}

// det(H - lambda I) for a real symmetric tridiagonal H with zero diagonal:
// lambda^4 - (a^2 + b^2 + c^2) lambda^2 + a^2 c^2.
inline double tridiagonal_charpoly(const ComplexMatrix4& h, double lambda) {
  const double a = h(0, 1).real();
  const double b = h(1, 2).real();
  const double c = h(2, 3).real();
  const double l2 = lambda * lambda;
  return l2 * l2 - (a * a + b * b + c * c) * l2 + a * a * c * c;
}

// Classical fixed-step RK4 for i dC/dt = H(t) C.
inline AmplitudeVector rk4_integrate(const std::function<ComplexMatrix4(double)>& h, AmplitudeVector c, double t0,
                                     double t1, int steps) {
  const double dt = (t1 - t0) / steps;
  const Complex minus_i(0.0, -1.0);
  auto rhs = [&](double t, const AmplitudeVector& y) {
    AmplitudeVector r = h(t) * y;
    for (std::size_t k = 0; k < 4; ++k) r[k] *= minus_i;
    return r;
  };
  auto axpy = [](const AmplitudeVector& y, double a, const AmplitudeVector& k) {
    AmplitudeVector r;
    for (std::size_t i = 0; i < 4; ++i) r[i] = y[i] + a * k[i];
    return r;
  };
  double t = t0;
  for (int s = 0; s < steps; ++s) {
    const auto k1 = rhs(t, c);
    const auto k2 = rhs(t + dt / 2, axpy(c, dt / 2, k1));
    const auto k3 = rhs(t + dt / 2, axpy(c, dt / 2, k2));
    const auto k4 = rhs(t + dt, axpy(c, dt, k3));
    for (std::size_t i = 0; i < 4; ++i) c[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t = t0 + (s + 1) * dt;
  }
  return c;
}

inline AmplitudeVector rk4_propagate(const ComplexMatrix4& h, const AmplitudeVector& c, double t, int steps) {
  return rk4_integrate([&](double) { return h; }, c, 0.0, t, steps);
}

// Spin-3/2 rotation populations starting from level 1 at resonance.
inline std::array<double, 4> binomial_populations(double kt) {
  const double c2 = std::cos(kt) * std::cos(kt);
  const double s2 = std::sin(kt) * std::sin(kt);
  return {c2 * c2 * c2, 3.0 * c2 * c2 * s2, 3.0 * c2 * s2 * s2, s2 * s2 * s2};
}

inline double max_trace_difference(const ProbabilityTrace& a, const ProbabilityTrace& b) {
  double worst = 0.0;
  for (int k = 1; k <= 4; ++k) worst = std::max(worst, max_series_difference(a, k, b, k));
  return worst;
}

}  // namespace cascade::test
