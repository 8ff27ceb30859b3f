#include "cascade/quantized.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cascade/errors.hpp"

namespace cascade {

namespace {

using Real = long double;

constexpr Real kDomainSlack = 1e-9L;

struct DressedEntries {
  Real a11, a12, a13, a14, a21, a22, a23, a24;
};

// First two rows of the dressed rotation; rows three and four follow from the
// anti-diagonal structure a3j = -+a2j, a4j = -+a1j.
DressedEntries dressed_entries(int n) {
  const Real m = n;
  const Real b = std::sqrt(25.0L + 16.0L * m * (2.0L + m));
  const Real d = 5.0L * (5.0L + b) + 2.0L * m * (16.0L + b + 8.0L * m);
  const Real shifted = (5.0L + 5.0L * m - b) * (5.0L + 2.0L * m + b);

  DressedEntries e{};
  e.a11 = -(1.0L + b - 2.0L * m) * std::sqrt(5.0L + b + 5.0L * m) / (2.0L * std::sqrt(3.0L * (2.0L + m) * d));
  e.a12 = (5.0L + 2.0L * m + b) / (2.0L * std::sqrt(d));
  e.a13 = -std::sqrt((1.0L + m) * (5.0L + b + 5.0L * m)) / std::sqrt(d);
  e.a14 = std::sqrt(b - 5.0L - 2.0L * m) / (2.0L * std::sqrt(b));
  e.a21 = (b - 1.0L + 2.0L * m) * std::sqrt(shifted) / (12.0L * std::sqrt(m * (m + 1.0L) * (m + 2.0L) * b));
  e.a22 = -std::sqrt(3.0L * m * (1.0L + m)) / std::sqrt(b * (5.0L + b + 2.0L * m));
  e.a23 = -std::sqrt(shifted) / (2.0L * std::sqrt(3.0L * m * b));
  e.a24 = std::sqrt(5.0L + 2.0L * m + b) / (2.0L * std::sqrt(b));
  return e;
}

Matrix4<Real> assemble(const DressedEntries& e) {
  Matrix4<Real> t;
  const std::array<Real, 16> v{e.a11,  e.a12, e.a13,  e.a14,  //
                               e.a21,  e.a22, e.a23,  e.a24,  //
                               -e.a21, e.a22, -e.a23, e.a24,  //
                               -e.a11, e.a12, -e.a13, e.a14};
  for (std::size_t i = 0; i < 16; ++i) t(i / 4, i % 4) = v[i];
  return t;
}

RotationMatrix4 to_double(const Matrix4<Real>& m) {
  RotationMatrix4 r;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r(i, j) = static_cast<double>(m(i, j));
  return r;
}

void require_dressed_sector(int n) {
  if (n < 1) throw InvalidSector("closed-form dressed rotation needs n >= 1, got n = " + std::to_string(n));
}

Real checked_sqrt(Real x, const char* what) {
  if (x < -kDomainSlack) {
    std::ostringstream msg;
    msg << what << ": negative radicand " << static_cast<double>(x);
    throw DomainError(msg.str());
  }
  return std::sqrt(std::max(x, 0.0L));
}

Real clamp_unit(Real x, const char* what) {
  if (!std::isfinite(x) || std::abs(x) > 1.0L + kDomainSlack) {
    std::ostringstream msg;
    msg << what << ": argument " << static_cast<double>(x) << " outside [-1, 1]";
    throw DomainError(msg.str());
  }
  return std::clamp(x, -1.0L, 1.0L);
}

Real checked_acos(Real x, const char* what) { return std::acos(clamp_unit(x, what)); }
Real checked_asin(Real x, const char* what) { return std::asin(clamp_unit(x, what)); }

}  // namespace

void SectorParams::validate() const {
  if (n < 0) throw InvalidSector("photon index must be >= 0, got n = " + std::to_string(n));
  if (!std::isfinite(g) || !(g > 0.0)) throw InvalidParameter("coupling g must be positive and finite");
  if (!std::isfinite(delta)) throw InvalidParameter("detuning must be finite");
}

ComplexMatrix4 sector_hamiltonian(const SectorParams& p) {
  p.validate();
  const double n = p.n;
  ComplexMatrix4 h;
  const std::array<double, 3> coupling{std::sqrt(3.0 * (n + 2.0)), 2.0 * std::sqrt(n + 1.0), std::sqrt(3.0 * n)};
  for (std::size_t k = 0; k < 3; ++k) {
    h(k, k + 1) = p.g * coupling[k];
    h(k + 1, k) = p.g * coupling[k];
  }
  const std::array<double, 4> m{-1.5, -0.5, 0.5, 1.5};
  for (std::size_t k = 0; k < 4; ++k) h(k, k) = p.delta * m[k];
  return h;
}

DressedSpectrum sector_eigenvalues(int n, double g) {
  SectorParams{n, g, 0.0}.validate();
  const Real m = n;
  const Real b = std::sqrt(25.0L + 16.0L * m * (2.0L + m));
  const Real outer = std::sqrt(5.0L * (1.0L + m) + b);
  const Real inner = std::sqrt(std::max(5.0L * (1.0L + m) - b, 0.0L));
  DressedSpectrum s;
  s.b = static_cast<double>(b);
  s.lambda = {-g * static_cast<double>(outer), -g * static_cast<double>(inner), g * static_cast<double>(inner),
              g * static_cast<double>(outer)};
  return s;
}

std::string DressedRotationReport::describe() const {
  std::ostringstream out;
  out << "sector n=" << n << ": orthogonality defect " << orthogonality_defect << ", diagonalization defect "
      << diagonalization_defect << " (tolerance " << tolerance << ")";
  for (const auto& e : failing_entries)
    out << "\n  " << e.check << " entry (" << e.row << "," << e.col << ") = " << e.value;
  return out.str();
}

RotationMatrix4 dressed_matrix_elements_unchecked(int n) {
  require_dressed_sector(n);
  return to_double(assemble(dressed_entries(n)));
}

DressedRotationReport check_dressed_rotation(int n, const RotationMatrix4& t) {
  DressedRotationReport report;
  report.n = n;
  report.tolerance = 1e-9 * std::max(1.0, std::sqrt(static_cast<double>(n)));

  const RealMatrix4 gram = t.transpose() * t - RealMatrix4::identity();
  report.orthogonality_defect = max_abs(gram);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double v = gram(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (!(std::abs(v) <= report.tolerance)) report.failing_entries.push_back({"orthogonality", i + 1, j + 1, v});
    }

  const ComplexMatrix4 h = sector_hamiltonian({n, 1.0, 0.0});
  RealMatrix4 hr;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) hr(i, j) = h(i, j).real();
  const RealMatrix4 d = t * hr * t.transpose();

  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      const double v = d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      worst = std::max(worst, std::abs(v));
      if (!(std::abs(v) <= report.tolerance)) report.failing_entries.push_back({"off-diagonal", i + 1, j + 1, v});
    }

  const auto expected = sector_eigenvalues(n, 1.0).lambda;
  std::array<std::pair<double, int>, 4> diag{};
  for (int k = 0; k < 4; ++k) diag[static_cast<std::size_t>(k)] = {d(static_cast<std::size_t>(k), static_cast<std::size_t>(k)), k};
  std::sort(diag.begin(), diag.end());
  for (std::size_t k = 0; k < 4; ++k) {
    const double miss = diag[k].first - expected[k];
    worst = std::max(worst, std::abs(miss));
    if (!(std::abs(miss) <= report.tolerance))
      report.failing_entries.push_back({"eigenvalue", diag[k].second + 1, diag[k].second + 1, miss});
  }
  report.diagonalization_defect = worst;
  return report;
}

RotationMatrix4 dressed_matrix_elements(int n) {
  const RotationMatrix4 t = dressed_matrix_elements_unchecked(n);
  const DressedRotationReport report = check_dressed_rotation(n, t);
  if (!report.ok()) throw FormulaInconsistency(report.describe());
  return t;
}

RotationMatrix4 vacuum_sector_rotation() {
  const double r6 = std::sqrt(6.0);
  const double r10 = std::sqrt(10.0);
  const double r20 = std::sqrt(20.0);
  RotationMatrix4 t;
  // rows: -sqrt10, 0 (coupled), 0 (decoupled |-1,4>), +sqrt10
  t(0, 0) = r6 / r20;
  t(0, 1) = -r10 / r20;
  t(0, 2) = 2.0 / r20;
  t(1, 0) = 2.0 / r10;
  t(1, 2) = -r6 / r10;
  t(2, 3) = 1.0;
  t(3, 0) = r6 / r20;
  t(3, 1) = r10 / r20;
  t(3, 2) = 2.0 / r20;
  return t;
}

EulerAngles quantized_euler_angles(int n, AngleFormula formula) {
  require_dressed_sector(n);
  const DressedEntries e = dressed_entries(n);
  const Real a11 = e.a11, a12 = e.a12, a13 = e.a13, a23 = e.a23;
  const Real a11s = a11 * a11, a13s = a13 * a13, a23s = a23 * a23;
  const Real rest = 1.0L - a11s - a13s;  // (c4 c5)^2
  const bool printed = formula == AngleFormula::as_printed;

  Real t1, t2, t3;
  {
    const Real arg = a11 / std::sqrt((1.0L - a13s) * rest);
    t1 = checked_acos(printed ? -arg : arg, "theta1");
  }
  {
    const Real num = a11 * a13 * a23 +
                     (1.0L - a13s) * checked_sqrt((1.0L - 2.0L * a11s - 2.0L * a13s) * (1.0L - 2.0L * a13s - a23s),
                                                  "theta2 numerator");
    const Real den = (2.0L * a13s - 1.0L) *
                     checked_sqrt((a13s - 1.0L) * (a13s - 1.0L) + a11s * (a13s - 2.0L), "theta2 denominator");
    t2 = checked_acos(printed ? num / den : -num / den, "theta2");
  }
  if (printed) {
    const Real num = a13 * checked_sqrt(a11s + a13s - 1.0L, "theta3 numerator");
    const Real den = checked_sqrt(a11s * (2.0L - a13s) + (1.0L - a13s) * (1.0L - a13s), "theta3 denominator");
    t3 = checked_asin(num / den, "theta3");
  } else {
    const Real num = a13 * checked_sqrt(rest, "theta3 numerator");
    const Real den = checked_sqrt((1.0L - a13s) * (1.0L - a13s) - a11s * (2.0L - a13s), "theta3 denominator");
    t3 = checked_asin(num / den, "theta3");
  }
  const Real t4 = checked_asin(a13, "theta4");
  const Real t5 = -checked_asin(a11 / std::sqrt(1.0L - a13s), "theta5");
  const Real t6 = checked_asin(a12 / checked_sqrt(rest, "theta6"), "theta6");

  return EulerAngles{{static_cast<double>(t1), static_cast<double>(t2), static_cast<double>(t3),
                      static_cast<double>(t4), static_cast<double>(t5), static_cast<double>(t6)}};
}

SpectralPropagator sector_propagator(const SectorParams& p) {
  p.validate();
  if (p.delta != 0.0) return SpectralPropagator(hermitian_eigensystem(sector_hamiltonian(p)));
  const auto spectrum = sector_eigenvalues(p.n, p.g);
  if (p.n == 0) return SpectralPropagator::from_rows(vacuum_sector_rotation(), spectrum.lambda);
  return SpectralPropagator::from_rows(dressed_matrix_elements(p.n), spectrum.lambda);
}

AmplitudeVector evolve_sector_amplitudes(const AmplitudeVector& c0, const SectorParams& p, double t) {
  p.validate();
  if (!c0.is_normalized(1e-12)) throw InvalidParameter("initial amplitudes must be normalized");
  if (p.n == 0 && c0[3] != Complex(0.0))
    throw NonPhysicalState("sector n = 0 has no |-1,4> state; its amplitude must be zero");
  return sector_propagator(p).evolve(c0, t);
}

ProbabilityTrace sector_probability_trace(CaseId c, const SectorParams& p, const TimeGrid& grid) {
  if (is_semiclassical_case(c))
    throw InvalidParameter("case " + std::string(to_string(c)) + " belongs to the classical-field model");
  p.validate();
  if (c == CaseId::VIII && p.n < 1)
    throw InvalidSector("case VIII starts in |n-1,4>, which needs n >= 1 (got n = " + std::to_string(p.n) + ")");

  const SpectralPropagator u = sector_propagator(p);
  const AmplitudeVector c0 = AmplitudeVector::basis(initial_level(c));
  ProbabilityTrace trace(grid.times());
  for (std::size_t i = 0; i < grid.size(); ++i) trace.set(i, u.evolve(c0, grid.times()[i]).probabilities());
  return trace;
}

}  // namespace cascade
