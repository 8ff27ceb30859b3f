#pragma once

// Four-level ladder atom driven by a classical monochromatic field.
//
// Everything here works in level order (index 0 = level 1, the lowest level)
// with hbar = 1, so Hamiltonians are angular-frequency matrices and times are
// in units of 1/kappa when kappa = 1.

#include "cascade/euler.hpp"
#include "cascade/linalg.hpp"
#include "cascade/trace.hpp"

namespace cascade {

struct SemiclassicalParams {
  double omega0 = 0.0;  ///< level spacing
  double drive = 0.0;   ///< field frequency Omega
  double kappa = 1.0;   ///< coupling constant

  double detuning() const { return omega0 - drive; }

  /// Parameters with the given detuning; the drive is chosen as
  /// max(0, -delta) so that both frequencies stay non-negative.
  static SemiclassicalParams with_detuning(double delta, double kappa);

  /// Throws InvalidParameter for negative or non-finite values.
  void validate() const;
};

/// H(t) = w0 J3 + kappa (J+ e^{-i W t} + J- e^{i W t}) in level order.
ComplexMatrix4 lab_frame_hamiltonian(const SemiclassicalParams& p, double t);

/// Time-independent Hamiltonian in the frame rotating with the drive:
/// diagonal delta * (-3/2, -1/2, 1/2, 3/2), couplings kappa * (sqrt3, 2, sqrt3).
ComplexMatrix4 rotating_frame_hamiltonian(const SemiclassicalParams& p);

/// Closed-form diagonalizing angles of the resonant rotating-frame
/// Hamiltonian. Rows of the resulting rotation pair with (-3k, -k, k, 3k).
EulerAngles semiclassical_euler_angles();

/// Resonant closed-form rotation T with T H T^T = diag(-3k, -k, k, 3k).
RotationMatrix4 semiclassical_rotation();

/// Propagator of the rotating-frame Hamiltonian. At zero detuning this is the
/// closed-form Euler-angle rotation; otherwise the numerical eigensystem.
SpectralPropagator semiclassical_propagator(const SemiclassicalParams& p);

/// Rotating-frame amplitudes at time t. These differ from lab-frame
/// amplitudes only by the phases applied in lab_frame_amplitudes.
AmplitudeVector evolve_amplitudes(const AmplitudeVector& c0, const SemiclassicalParams& p, double t);

/// Lab-frame amplitudes from rotating-frame ones: C_k = exp(-i W m_k t) C~_k
/// with m_k the magnetic number of level k.
AmplitudeVector lab_frame_amplitudes(const AmplitudeVector& rotating, const SemiclassicalParams& p, double t);

/// Populations for cases I..IV. Each grid point is evaluated from t = 0.
ProbabilityTrace probability_trace(CaseId c, const SemiclassicalParams& p, const TimeGrid& grid);

/// Populations for an arbitrary normalized initial state.
ProbabilityTrace probability_trace(const AmplitudeVector& c0, const SemiclassicalParams& p, const TimeGrid& grid);

struct IntegratorOptions {
  double tolerance = 1e-10;          ///< absolute and relative local error
  std::size_t max_steps = 1'000'000;  ///< between two grid points
};

/// Integrates i dC/dt = H(t) C in the lab frame with adaptive Dormand-Prince
/// steps. Independent of the rotating-frame route. Throws IntegratorFailure
/// when step control gives up.
ProbabilityTrace integrate_lab_frame(const AmplitudeVector& c0, const SemiclassicalParams& p, const TimeGrid& grid,
                                     const IntegratorOptions& options = {});

/// Same integration, returning the lab-frame amplitudes at every grid point.
std::vector<AmplitudeVector> integrate_lab_frame_amplitudes(const AmplitudeVector& c0, const SemiclassicalParams& p,
                                                            const TimeGrid& grid,
                                                            const IntegratorOptions& options = {});

}  // namespace cascade
