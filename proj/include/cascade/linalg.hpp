#pragma once

// Small fixed-size complex linear algebra for the four-level problems:
// 4x4 matrices, amplitude vectors, a Hermitian eigensolver and the
// spectral propagator exp(-i H t).

#include <array>
#include <complex>
#include <cstddef>

namespace cascade {

using Complex = std::complex<double>;

/// Row-major 4x4 matrix with 0-based indices.
template <class T>
class Matrix4 {
 public:
  static constexpr std::size_t kDim = 4;

  constexpr Matrix4() : entries_{} {}

  static constexpr Matrix4 identity() {
    Matrix4 m;
    for (std::size_t i = 0; i < kDim; ++i) m(i, i) = T{1};
    return m;
  }

  static constexpr Matrix4 diagonal(const std::array<double, 4>& d) {
    Matrix4 m;
    for (std::size_t i = 0; i < kDim; ++i) m(i, i) = T{d[i]};
    return m;
  }

  constexpr T& operator()(std::size_t row, std::size_t col) { return entries_[row * kDim + col]; }
  constexpr const T& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * kDim + col];
  }

  constexpr Matrix4 transpose() const {
    Matrix4 r;
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) r(i, j) = (*this)(j, i);
    return r;
  }

  constexpr Matrix4 operator*(const Matrix4& rhs) const {
    Matrix4 r;
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t k = 0; k < kDim; ++k) {
        const T a = (*this)(i, k);
        for (std::size_t j = 0; j < kDim; ++j) r(i, j) += a * rhs(k, j);
      }
    return r;
  }

  constexpr Matrix4 operator+(const Matrix4& rhs) const {
    Matrix4 r;
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] + rhs.entries_[i];
    return r;
  }

  constexpr Matrix4 operator-(const Matrix4& rhs) const {
    Matrix4 r;
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] - rhs.entries_[i];
    return r;
  }

  constexpr Matrix4 operator*(T s) const {
    Matrix4 r;
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] * s;
    return r;
  }

  constexpr bool operator==(const Matrix4&) const = default;

  const std::array<T, 16>& data() const { return entries_; }

 private:
  std::array<T, 16> entries_;
};

using ComplexMatrix4 = Matrix4<Complex>;
using RealMatrix4 = Matrix4<double>;

/// Orthogonal 4x4 matrix whose rows are the eigenvectors of a Hamiltonian.
using RotationMatrix4 = RealMatrix4;

ComplexMatrix4 to_complex(const RealMatrix4& m);
ComplexMatrix4 adjoint(const ComplexMatrix4& m);

/// Largest |m(i,j)|.
double max_abs(const ComplexMatrix4& m);
double max_abs(const RealMatrix4& m);
double max_abs_diff(const ComplexMatrix4& a, const ComplexMatrix4& b);
double max_abs_diff(const RealMatrix4& a, const RealMatrix4& b);

/// max |m(i,j) - conj(m(j,i))|.
double hermiticity_residual(const ComplexMatrix4& m);

/// Largest off-diagonal magnitude.
double off_diagonal_max(const RealMatrix4& m);

bool all_finite(const ComplexMatrix4& m);

/// Max absolute entry of T^T T - I.
double orthogonality_defect(const RealMatrix4& t);

/// Four complex probability amplitudes stored in level order: index 0 is
/// level 1 (the ground level) and index 3 is level 4.
class AmplitudeVector {
 public:
  constexpr AmplitudeVector() : c_{} {}
  constexpr AmplitudeVector(Complex c1, Complex c2, Complex c3, Complex c4) : c_{c1, c2, c3, c4} {}

  /// The basis state of a single level (1..4).
  static AmplitudeVector basis(int level);

  Complex& operator[](std::size_t i) { return c_[i]; }
  const Complex& operator[](std::size_t i) const { return c_[i]; }

  /// Amplitude of level 1..4.
  Complex level(int level) const;

  double norm() const;
  std::array<double, 4> probabilities() const;
  AmplitudeVector normalized() const;

  bool is_normalized(double tol = 1e-12) const;

  const std::array<Complex, 4>& data() const { return c_; }

 private:
  std::array<Complex, 4> c_;
};

AmplitudeVector operator*(const ComplexMatrix4& m, const AmplitudeVector& v);
double max_abs_diff(const AmplitudeVector& a, const AmplitudeVector& b);

/// Eigenvalues ascending; column k of `eigenvectors` pairs with eigenvalue k.
struct EigenSystem4 {
  std::array<double, 4> eigenvalues{};
  ComplexMatrix4 eigenvectors;
};

/// Cyclic complex Jacobi diagonalization of a Hermitian 4x4 matrix.
///
/// Each eigenvector is phased so its largest-magnitude component is real and
/// positive (first index wins among equal magnitudes), which makes the output
/// reproducible. Throws NonHermitianInput when the input is not Hermitian to
/// 1e-12 or has non-finite entries, and ConvergenceFailure if the sweep cap is
/// hit.
EigenSystem4 hermitian_eigensystem(const ComplexMatrix4& m);

/// exp(-i H t) acting on states, cached as H = V diag(lambda) V^dagger.
///
/// Evaluation at a time t is independent of any other evaluation, so traces
/// can be built point by point from t = 0.
class SpectralPropagator {
 public:
  SpectralPropagator() = default;
  explicit SpectralPropagator(const EigenSystem4& eig);

  /// Build from an orthogonal matrix whose ROWS are eigenvectors, i.e.
  /// rows * H * rows^T = diag(eigenvalues).
  static SpectralPropagator from_rows(const RotationMatrix4& rows, const std::array<double, 4>& eigenvalues);

  /// Returns exp(-i H t) psi0; returns psi0 unchanged at t == 0.
  AmplitudeVector evolve(const AmplitudeVector& psi0, double t) const;

  const std::array<double, 4>& eigenvalues() const { return eigenvalues_; }
  const ComplexMatrix4& eigenvectors() const { return vectors_; }

 private:
  std::array<double, 4> eigenvalues_{};
  ComplexMatrix4 vectors_ = ComplexMatrix4::identity();
};

/// exp(-i h t) psi0 through the eigendecomposition of h.
AmplitudeVector matrix_exponential_propagate(const ComplexMatrix4& h, const AmplitudeVector& psi0, double t);

}  // namespace cascade
