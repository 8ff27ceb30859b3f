#include "cascade/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "cascade/errors.hpp"
#include "cascade/spin.hpp"

namespace cascade {

namespace {

using odeint_state = std::array<double, 8>;

void require_normalized(const AmplitudeVector& c0) {
  if (!c0.is_normalized(1e-12)) throw InvalidParameter("initial amplitudes must be normalized");
}

void require_semiclassical(CaseId c) {
  if (!is_semiclassical_case(c))
    throw InvalidParameter("case " + std::string(to_string(c)) + " belongs to the quantized model");
}

ProbabilityTrace trace_from(const SpectralPropagator& u, const AmplitudeVector& c0, const TimeGrid& grid) {
  ProbabilityTrace trace(grid.times());
  for (std::size_t i = 0; i < grid.size(); ++i) trace.set(i, u.evolve(c0, grid.times()[i]).probabilities());
  return trace;
}

}  // namespace

SemiclassicalParams SemiclassicalParams::with_detuning(double delta, double kappa) {
  SemiclassicalParams p;
  p.drive = std::max(0.0, -delta);
  p.omega0 = p.drive + delta;
  p.kappa = kappa;
  return p;
}

void SemiclassicalParams::validate() const {
  if (!std::isfinite(omega0) || omega0 < 0.0) throw InvalidParameter("omega0 must be finite and non-negative");
  if (!std::isfinite(drive) || drive < 0.0) throw InvalidParameter("drive frequency must be finite and non-negative");
  if (!std::isfinite(kappa) || kappa < 0.0) throw InvalidParameter("kappa must be finite and non-negative");
}

ComplexMatrix4 lab_frame_hamiltonian(const SemiclassicalParams& p, double t) {
  p.validate();
  const SpinOperators j = spin32_generators();
  const Complex down = std::polar(1.0, -p.drive * t);
  const ComplexMatrix4 h = to_complex(j.j3 * p.omega0) + to_complex(j.j_plus * p.kappa) * down +
                           to_complex(j.j_minus * p.kappa) * std::conj(down);
  return reverse_basis(h);
}

ComplexMatrix4 rotating_frame_hamiltonian(const SemiclassicalParams& p) {
  p.validate();
  const SpinOperators j = spin32_generators();
  return to_complex(reverse_basis(j.j3 * p.detuning() + (j.j_plus + j.j_minus) * p.kappa));
}

EulerAngles semiclassical_euler_angles() {
  using std::numbers::pi;
  return EulerAngles{{std::acos(-std::sqrt(2.0 / 5.0)), 3.0 * pi / 4.0, -pi / 2.0, -std::asin(std::sqrt(3.0 / 8.0)),
                      std::asin(std::sqrt(1.0 / 5.0)), pi / 3.0}};
}

RotationMatrix4 semiclassical_rotation() { return euler_rotation_matrix(semiclassical_euler_angles()); }

SpectralPropagator semiclassical_propagator(const SemiclassicalParams& p) {
  p.validate();
  if (p.detuning() == 0.0) {
    const double k = p.kappa;
    return SpectralPropagator::from_rows(semiclassical_rotation(), {-3.0 * k, -k, k, 3.0 * k});
  }
  return SpectralPropagator(hermitian_eigensystem(rotating_frame_hamiltonian(p)));
}

AmplitudeVector evolve_amplitudes(const AmplitudeVector& c0, const SemiclassicalParams& p, double t) {
  require_normalized(c0);
  return semiclassical_propagator(p).evolve(c0, t);
}

AmplitudeVector lab_frame_amplitudes(const AmplitudeVector& rotating, const SemiclassicalParams& p, double t) {
  AmplitudeVector out;
  for (int level = 1; level <= 4; ++level) {
    const auto k = static_cast<std::size_t>(level - 1);
    out[k] = rotating[k] * std::polar(1.0, -p.drive * magnetic_number(level) * t);
  }
  return out;
}

ProbabilityTrace probability_trace(CaseId c, const SemiclassicalParams& p, const TimeGrid& grid) {
  require_semiclassical(c);
  return probability_trace(AmplitudeVector::basis(initial_level(c)), p, grid);
}

ProbabilityTrace probability_trace(const AmplitudeVector& c0, const SemiclassicalParams& p, const TimeGrid& grid) {
  require_normalized(c0);
  return trace_from(semiclassical_propagator(p), c0, grid);
}

std::vector<AmplitudeVector> integrate_lab_frame_amplitudes(const AmplitudeVector& c0, const SemiclassicalParams& p,
                                                            const TimeGrid& grid, const IntegratorOptions& options) {
  namespace odeint = boost::numeric::odeint;
  require_normalized(c0);
  p.validate();

  // i dC/dt = H(t) C, with C stored as (re, im) pairs.
  auto rhs = [&p](const odeint_state& x, odeint_state& dxdt, double t) {
    const ComplexMatrix4 h = lab_frame_hamiltonian(p, t);
    for (std::size_t i = 0; i < 4; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < 4; ++j) s += h(i, j) * Complex(x[2 * j], x[2 * j + 1]);
      const Complex d = Complex(0.0, -1.0) * s;
      dxdt[2 * i] = d.real();
      dxdt[2 * i + 1] = d.imag();
    }
  };

  odeint_state x{};
  for (std::size_t i = 0; i < 4; ++i) {
    x[2 * i] = c0[i].real();
    x[2 * i + 1] = c0[i].imag();
  }

  std::vector<AmplitudeVector> out;
  out.reserve(grid.size());
  auto observer = [&out](const odeint_state& s, double) {
    out.emplace_back(Complex(s[0], s[1]), Complex(s[2], s[3]), Complex(s[4], s[5]), Complex(s[6], s[7]));
  };

  const double rate = std::max({p.omega0 * 1.5, p.drive, p.kappa * 3.0, 1.0});
  const double dt0 = 0.01 / rate;
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<odeint_state>>(options.tolerance, options.tolerance);
  try {
    odeint::integrate_times(stepper, rhs, x, grid.times().begin(), grid.times().end(), dt0, observer,
                            odeint::max_step_checker(static_cast<int>(options.max_steps)));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw IntegratorFailure(std::string("lab-frame integration failed: ") + e.what());
  }
  return out;
}

ProbabilityTrace integrate_lab_frame(const AmplitudeVector& c0, const SemiclassicalParams& p, const TimeGrid& grid,
                                     const IntegratorOptions& options) {
  const auto amplitudes = integrate_lab_frame_amplitudes(c0, p, grid, options);
  ProbabilityTrace trace(grid.times());
  for (std::size_t i = 0; i < amplitudes.size(); ++i) trace.set(i, amplitudes[i].probabilities());
  return trace;
}

}  // namespace cascade
