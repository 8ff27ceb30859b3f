#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cascade/errors.hpp"
#include "cascade/linalg.hpp"
#include "cascade/quantized.hpp"
#include "cascade/semiclassical.hpp"
#include "support.hpp"

using namespace cascade;
using std::numbers::pi;

TEST_CASE("eigensystem of a diagonal matrix is the permuted identity") {
  const auto h = ComplexMatrix4::diagonal({1.0, -3.0, 3.0, -1.0});
  const auto eig = hermitian_eigensystem(h);
  CHECK(eig.eigenvalues == std::array<double, 4>{-3.0, -1.0, 1.0, 3.0});
  const std::array<std::size_t, 4> source{1, 3, 0, 2};
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(std::abs(eig.eigenvectors(i, k) - Complex(i == source[k] ? 1.0 : 0.0)) < 1e-15);
}

TEST_CASE("resonant rotating-frame spectrum is (-3, -1, 1, 3)") {
  const auto eig = hermitian_eigensystem(rotating_frame_hamiltonian(SemiclassicalParams::with_detuning(0.0, 1.0)));
  const std::array<double, 4> expected{-3.0, -1.0, 1.0, 3.0};
  for (std::size_t k = 0; k < 4; ++k) CHECK(eig.eigenvalues[k] == doctest::Approx(expected[k]).epsilon(1e-13));
}

TEST_CASE("vacuum sector spectrum matches the characteristic polynomial") {
  const auto h = sector_hamiltonian({0, 1.0, 0.0});
  const auto eig = hermitian_eigensystem(h);
  const double s10 = std::sqrt(10.0);
  const std::array<double, 4> expected{-s10, 0.0, 0.0, s10};
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(eig.eigenvalues[k] - expected[k]) < 1e-12);
  for (double lambda : eig.eigenvalues) CHECK(std::abs(test::tridiagonal_charpoly(h, lambda)) < 1e-10);
}

TEST_CASE("eigensolver rejects non-Hermitian and non-finite input") {
  auto h = ComplexMatrix4::identity();
  h(0, 1) = Complex(1.0, 0.0);
  CHECK_THROWS_AS(hermitian_eigensystem(h), NonHermitianInput);
  auto g = ComplexMatrix4::identity();
  g(2, 2) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(hermitian_eigensystem(g), NonHermitianInput);
}

TEST_CASE("eigensystem invariants on random Hermitian matrices") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = test::random_hermitian(rng, trial % 3 == 0 ? 100.0 : 1.0);
    const auto eig = hermitian_eigensystem(h);
    const double scale = std::max(1.0, max_abs(h));

    CHECK(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));
    const auto& v = eig.eigenvectors;
    CHECK(max_abs_diff(adjoint(v) * v, ComplexMatrix4::identity()) < 1e-12);
    CHECK(max_abs_diff(v * ComplexMatrix4::diagonal(eig.eigenvalues) * adjoint(v), h) < 1e-11 * scale);

    for (std::size_t k = 0; k < 4; ++k) {
      std::size_t top = 0;
      for (std::size_t i = 1; i < 4; ++i)
        if (std::abs(v(i, k)) > std::abs(v(top, k)) + 1e-12) top = i;
      CHECK(v(top, k).real() > 0.0);
      CHECK(std::abs(v(top, k).imag()) < 1e-14);
    }
    const auto again = hermitian_eigensystem(h);
    CHECK(again.eigenvalues == eig.eigenvalues);
    CHECK(again.eigenvectors == eig.eigenvectors);
  }
}

TEST_CASE("cascade spectra come in +- pairs") {
  auto check_pairs = [](const ComplexMatrix4& h) {
    const auto e = hermitian_eigensystem(h).eigenvalues;
    CHECK(std::abs(e[0] + e[3]) < 1e-12 * std::max(1.0, std::abs(e[3])));
    CHECK(std::abs(e[1] + e[2]) < 1e-12 * std::max(1.0, std::abs(e[3])));
  };
  check_pairs(rotating_frame_hamiltonian(SemiclassicalParams::with_detuning(0.0, 0.7)));
  for (int n : {0, 1, 2, 7, 50, 499}) check_pairs(sector_hamiltonian({n, 1.3, 0.0}));
}

TEST_CASE("matrix exponential examples") {
  const AmplitudeVector psi = AmplitudeVector(Complex(0.5, 0.5), 0.5, Complex(0.0, -0.5), 0.0);
  CHECK(max_abs_diff(matrix_exponential_propagate(ComplexMatrix4{}, psi, 3.7), psi) == 0.0);

  const double t = 0.83;
  const auto out = matrix_exponential_propagate(ComplexMatrix4::diagonal({-3, -1, 1, 3}), AmplitudeVector::basis(1), t);
  CHECK(std::abs(out[0] - std::exp(Complex(0.0, 3.0 * t))) < 1e-14);
  for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(out[i]) == 0.0);

  const auto h = rotating_frame_hamiltonian(SemiclassicalParams::with_detuning(0.0, 1.0));
  const auto flipped = matrix_exponential_propagate(h, AmplitudeVector::basis(1), pi / 2.0);
  CHECK(std::norm(flipped[3]) == doctest::Approx(1.0).epsilon(1e-12));

  const auto rk4 = test::rk4_propagate(h, AmplitudeVector::basis(1), pi / 2.0, 20000);
  CHECK(max_abs_diff(rk4, flipped) < 1e-10);
}

TEST_CASE("propagation is unitary, composes, and runs backwards") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto h = test::random_hermitian(rng, 2.0);
    const auto psi = test::random_state(rng);
    std::uniform_real_distribution<double> time(-5.0, 5.0);
    const double t1 = time(rng);
    const double t2 = time(rng);
    const auto a = matrix_exponential_propagate(h, matrix_exponential_propagate(h, psi, t1), t2);
    const auto b = matrix_exponential_propagate(h, psi, t1 + t2);
    CHECK(max_abs_diff(a, b) < 1e-10);
    CHECK(std::abs(b.norm() - 1.0) < 1e-12);
    CHECK(max_abs_diff(matrix_exponential_propagate(h, b, -(t1 + t2)), psi) < 1e-10);
  }
}

TEST_CASE("spectral propagator returns the initial state exactly at t = 0") {
  std::mt19937_64 rng(3);
  const auto h = test::random_hermitian(rng, 1.0);
  const auto psi = test::random_state(rng);
  const SpectralPropagator prop(hermitian_eigensystem(h));
  CHECK(max_abs_diff(prop.evolve(psi, 0.0), psi) == 0.0);
}

TEST_CASE("orthogonality defect examples") {
  CHECK(orthogonality_defect(RealMatrix4::identity()) == 0.0);
  CHECK(orthogonality_defect(RealMatrix4::identity() * 2.0) == 3.0);
  CHECK(orthogonality_defect(semiclassical_rotation()) < 1e-12);
}

TEST_CASE("amplitude vector helpers") {
  const AmplitudeVector v(Complex(3.0, 0.0), 0.0, Complex(0.0, 4.0), 0.0);
  CHECK(v.norm() == doctest::Approx(5.0));
  CHECK_FALSE(v.is_normalized());
  const auto u = v.normalized();
  CHECK(u.is_normalized());
  const auto p = u.probabilities();
  CHECK(p[0] == doctest::Approx(0.36));
  CHECK(p[2] == doctest::Approx(0.64));
  CHECK(u.level(3) == u[2]);
  CHECK(AmplitudeVector::basis(4)[3] == Complex(1.0));
  CHECK_THROWS_AS(AmplitudeVector::basis(0), InvalidParameter);
  CHECK_THROWS_AS(AmplitudeVector::basis(5), InvalidParameter);
}
