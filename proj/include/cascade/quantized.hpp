#pragma once

// Four-level ladder atom coupled to a single quantized cavity mode (RWA).
//
// The Hamiltonian conserves excitation number, so the dynamics splits into
// four-dimensional sectors labelled by the photon index n with basis order
// (|n+2,1>, |n+1,2>, |n,3>, |n-1,4>). Sector vectors therefore use the same
// level order as the classical-field model.

#include <string>
#include <vector>

#include "cascade/euler.hpp"
#include "cascade/linalg.hpp"
#include "cascade/trace.hpp"

namespace cascade {

struct SectorParams {
  int n = 0;           ///< photon index of the sector
  double g = 1.0;      ///< atom-field coupling
  double delta = 0.0;  ///< detuning

  /// Throws InvalidSector for n < 0 and InvalidParameter for g <= 0.
  void validate() const;
};

/// Closed-form dressed energies at resonance.
struct DressedSpectrum {
  double b = 0.0;                    ///< sqrt(25 + 16 n (2 + n))
  std::array<double, 4> lambda{};  ///< ascending, in units of angular frequency
};

/// Sector Hamiltonian: couplings g (sqrt(3(n+2)), 2 sqrt(n+1), sqrt(3n)) and
/// diagonal delta (-3/2, -1/2, 1/2, 3/2). The constant W (n + 1/2) shift is
/// a global phase and is dropped.
ComplexMatrix4 sector_hamiltonian(const SectorParams& p);

/// lambda = g * (-sqrt(5(1+n)+b), -sqrt(5(1+n)-b), +sqrt(5(1+n)-b), +sqrt(5(1+n)+b)).
DressedSpectrum sector_eigenvalues(int n, double g);

/// Entry of a closed-form matrix that failed validation, 1-based.
struct EntryDefect {
  std::string check;  ///< "orthogonality", "off-diagonal" or "eigenvalue"
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Result of validating a closed-form dressed rotation for sector n.
struct DressedRotationReport {
  int n = 0;
  double orthogonality_defect = 0.0;
  double diagonalization_defect = 0.0;  ///< off-diagonal and eigenvalue mismatch of T H T^T
  double tolerance = 0.0;
  std::vector<EntryDefect> failing_entries;

  bool ok() const { return failing_entries.empty(); }
  std::string describe() const;
};

/// Closed-form dressed rotation for n >= 1 without validation. Rows are the
/// dressed states paired with ascending dressed energies.
RotationMatrix4 dressed_matrix_elements_unchecked(int n);

/// Validate a candidate rotation against the g = 1 resonant sector
/// Hamiltonian; tolerance is 1e-9 * max(1, sqrt(n)).
DressedRotationReport check_dressed_rotation(int n, const RotationMatrix4& t);

/// Closed-form dressed rotation for n >= 1, validated on every call.
/// Throws InvalidSector for n <= 0 and FormulaInconsistency, listing every
/// failing (row, col), if the matrix is not an orthogonal diagonalizer.
RotationMatrix4 dressed_matrix_elements(int n);

/// Rotation for the n = 0 sector, where the fourth state decouples and the
/// general expressions are singular. Energies (-sqrt10, 0, 0, sqrt10) * g;
/// the decoupled state is the third row.
RotationMatrix4 vacuum_sector_rotation();

/// Which closed-form angle expressions to evaluate.
enum class AngleFormula {
  corrected,   ///< with the sign errata documented in docs/ERRATA.md
  as_printed,  ///< the historical expressions; theta_3 leaves its domain
};

/// Six Euler angles of the dressed rotation for n >= 1. Arguments of
/// arccos/arcsin and radicands within 1e-9 outside their domain are clamped;
/// larger violations throw DomainError.
EulerAngles quantized_euler_angles(int n, AngleFormula formula = AngleFormula::corrected);

/// exp(-i H t) for the sector. At zero detuning the closed-form rotation and
/// energies are used; otherwise the numerical eigensystem.
SpectralPropagator sector_propagator(const SectorParams& p);

/// Sector amplitudes at time t. For n = 0 the fourth amplitude must vanish
/// (NonPhysicalState otherwise) and stays exactly zero.
AmplitudeVector evolve_sector_amplitudes(const AmplitudeVector& c0, const SectorParams& p, double t);

/// Populations for cases V..VIII. Case VIII needs n >= 1 (InvalidSector).
ProbabilityTrace sector_probability_trace(CaseId c, const SectorParams& p, const TimeGrid& grid);

}  // namespace cascade
