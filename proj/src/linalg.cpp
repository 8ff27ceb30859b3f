#include "cascade/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cascade/errors.hpp"

namespace cascade {

namespace {

constexpr std::size_t N = 4;
constexpr int kMaxSweeps = 64;
constexpr double kHermitianTolerance = 1e-12;

double frobenius(const ComplexMatrix4& m) {
  double s = 0.0;
  for (const auto& z : m.data()) s += std::norm(z);
  return std::sqrt(s);
}

double off_diagonal_sq(const ComplexMatrix4& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) s += std::norm(m(i, j));
  return s;
}

// One phase-reduced Jacobi rotation annihilating a(p,q).
void rotate(ComplexMatrix4& a, ComplexMatrix4& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  const Complex phase = apq / r;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * r);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  ComplexMatrix4 g = ComplexMatrix4::identity();
  g(p, p) = c;
  g(p, q) = s;
  g(q, p) = -s * std::conj(phase);
  g(q, q) = c * std::conj(phase);

  a = adjoint(g) * a * g;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t i = 0; i < N; ++i) a(i, i) = a(i, i).real();
  v = v * g;
}

}  // namespace

ComplexMatrix4 to_complex(const RealMatrix4& m) {
  ComplexMatrix4 r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = m(i, j);
  return r;
}

ComplexMatrix4 adjoint(const ComplexMatrix4& m) {
  ComplexMatrix4 r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(m(j, i));
  return r;
}

double max_abs(const ComplexMatrix4& m) {
  double r = 0.0;
  for (const auto& z : m.data()) r = std::max(r, std::abs(z));
  return r;
}

double max_abs(const RealMatrix4& m) {
  double r = 0.0;
  for (double x : m.data()) r = std::max(r, std::abs(x));
  return r;
}

double max_abs_diff(const ComplexMatrix4& a, const ComplexMatrix4& b) { return max_abs(a - b); }
double max_abs_diff(const RealMatrix4& a, const RealMatrix4& b) { return max_abs(a - b); }

double hermiticity_residual(const ComplexMatrix4& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
  return r;
}

double off_diagonal_max(const RealMatrix4& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) r = std::max(r, std::abs(m(i, j)));
  return r;
}

bool all_finite(const ComplexMatrix4& m) {
  return std::all_of(m.data().begin(), m.data().end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double orthogonality_defect(const RealMatrix4& t) {
  return max_abs(t.transpose() * t - RealMatrix4::identity());
}

AmplitudeVector AmplitudeVector::basis(int level) {
  if (level < 1 || level > 4) throw InvalidParameter("level must be in 1..4, got " + std::to_string(level));
  AmplitudeVector v;
  v.c_[static_cast<std::size_t>(level - 1)] = 1.0;
  return v;
}

Complex AmplitudeVector::level(int level) const {
  if (level < 1 || level > 4) throw InvalidParameter("level must be in 1..4, got " + std::to_string(level));
  return c_[static_cast<std::size_t>(level - 1)];
}

double AmplitudeVector::norm() const {
  double s = 0.0;
  for (const auto& z : c_) s += std::norm(z);
  return std::sqrt(s);
}

std::array<double, 4> AmplitudeVector::probabilities() const {
  return {std::norm(c_[0]), std::norm(c_[1]), std::norm(c_[2]), std::norm(c_[3])};
}

AmplitudeVector AmplitudeVector::normalized() const {
  const double n = norm();
  AmplitudeVector r;
  for (std::size_t i = 0; i < N; ++i) r.c_[i] = c_[i] / n;
  return r;
}

bool AmplitudeVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

AmplitudeVector operator*(const ComplexMatrix4& m, const AmplitudeVector& v) {
  AmplitudeVector r;
  for (std::size_t i = 0; i < N; ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < N; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

double max_abs_diff(const AmplitudeVector& a, const AmplitudeVector& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < N; ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

EigenSystem4 hermitian_eigensystem(const ComplexMatrix4& m) {
  if (!all_finite(m)) throw NonHermitianInput("matrix has non-finite entries");
  const double herm = hermiticity_residual(m);
  if (herm > kHermitianTolerance)
    throw NonHermitianInput("matrix is not Hermitian (residual " + std::to_string(herm) + ")");

  // Symmetrize so rounding in the input cannot leak into the rotations.
  ComplexMatrix4 a;
  for (std::size_t i = 0; i < N; ++i) {
    a(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < N; ++j) {
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }

  ComplexMatrix4 v = ComplexMatrix4::identity();
  const double scale = frobenius(a);
  const double target = scale * 1e-17;

  int sweep = 0;
  while (off_diagonal_sq(a) > target * target) {
    if (++sweep > kMaxSweeps) throw ConvergenceFailure("Jacobi iteration exceeded sweep cap");
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q)
        if (std::abs(a(p, q)) > 0.0) rotate(a, v, p, q);
  }

  std::array<std::size_t, 4> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  EigenSystem4 out;
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a(src, src).real();

    double biggest = 0.0;
    for (std::size_t i = 0; i < N; ++i) biggest = std::max(biggest, std::abs(v(i, src)));
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < N; ++i) {
      if (std::abs(v(i, src)) >= biggest - 1e-12) {
        pivot = i;
        break;
      }
    }
    const Complex phase = std::conj(v(pivot, src)) / std::abs(v(pivot, src));
    for (std::size_t i = 0; i < N; ++i) out.eigenvectors(i, k) = v(i, src) * phase;
    out.eigenvectors(pivot, k) = std::abs(v(pivot, src));
  }
  return out;
}

SpectralPropagator::SpectralPropagator(const EigenSystem4& eig)
    : eigenvalues_(eig.eigenvalues), vectors_(eig.eigenvectors) {}

SpectralPropagator SpectralPropagator::from_rows(const RotationMatrix4& rows,
                                                 const std::array<double, 4>& eigenvalues) {
  EigenSystem4 eig;
  eig.eigenvalues = eigenvalues;
  eig.eigenvectors = to_complex(rows.transpose());
  return SpectralPropagator(eig);
}

AmplitudeVector SpectralPropagator::evolve(const AmplitudeVector& psi0, double t) const {
  if (t == 0.0) return psi0;
  // psi(t) = V diag(exp(-i lambda t)) V^dagger psi0
  std::array<Complex, 4> coeff{};
  for (std::size_t k = 0; k < N; ++k) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += std::conj(vectors_(i, k)) * psi0[i];
    coeff[k] = s * std::polar(1.0, -eigenvalues_[k] * t);
  }
  AmplitudeVector out;
  for (std::size_t i = 0; i < N; ++i) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < N; ++k) s += vectors_(i, k) * coeff[k];
    out[i] = s;
  }
  return out;
}

AmplitudeVector matrix_exponential_propagate(const ComplexMatrix4& h, const AmplitudeVector& psi0, double t) {
  return SpectralPropagator(hermitian_eigensystem(h)).evolve(psi0, t);
}

}  // namespace cascade
