#include <doctest.h>

#include <cmath>

#include "cascade/spin.hpp"

using namespace cascade;

namespace {

RealMatrix4 commutator(const RealMatrix4& a, const RealMatrix4& b) { return a * b - b * a; }

}  // namespace

TEST_CASE("spin-3/2 generators") {
  const auto ops = spin32_generators();
  RealMatrix4 expected_plus;
  expected_plus(0, 1) = std::sqrt(3.0);
  expected_plus(1, 2) = 2.0;
  expected_plus(2, 3) = std::sqrt(3.0);
  CHECK(ops.j_plus == expected_plus);
  CHECK(ops.j_minus == ops.j_plus.transpose());
  CHECK(ops.j3 == RealMatrix4::diagonal({1.5, 0.5, -0.5, -1.5}));
  CHECK(max_abs(commutator(ops.j_plus, ops.j_minus) - ops.j3 * 2.0) < 1e-14);
  CHECK(max_abs(commutator(ops.j3, ops.j_plus) - ops.j_plus) < 1e-14);
}

TEST_CASE("commutator residual") {
  const auto ops = spin32_generators();
  CHECK(commutator_residual(ops) < 1e-14);

  auto scaled = ops;
  scaled.j_plus = ops.j_plus * 2.0;
  scaled.j_minus = ops.j_minus * 2.0;
  // [2J+, 2J-] - 2 J3 = 6 J3, largest entry 9.
  CHECK(commutator_residual(scaled) == doctest::Approx(9.0));
  CHECK(commutator_residual(scaled) > 1.0);

  auto zeroed = ops;
  zeroed.j3 = RealMatrix4{};
  // [J+, J-] = 2 J3 has entries up to 3, which dominates |J+| <= 2.
  CHECK(commutator_residual(zeroed) == doctest::Approx(3.0));
}

TEST_CASE("Casimir equals j(j+1) = 15/4") {
  const auto ops = spin32_generators();
  CHECK(casimir_residual(ops) < 1e-13);
  const auto c = ops.j_plus * ops.j_minus + ops.j3 * ops.j3 - ops.j3;
  CHECK(max_abs(c - RealMatrix4::identity() * 3.75) < 1e-13);
}

TEST_CASE("level 1 is the last spin coordinate") {
  const auto ops = spin32_generators();
  CHECK(coordinate_of_level(1) == 3);
  CHECK(coordinate_of_level(4) == 0);
  CHECK(ops.j3(coordinate_of_level(1), coordinate_of_level(1)) == -1.5);
  CHECK(ops.j3(coordinate_of_level(4), coordinate_of_level(4)) == 1.5);
  for (int level = 1; level <= 4; ++level) {
    const auto k = coordinate_of_level(level);
    CHECK(ops.j3(k, k) == magnetic_number(level));
  }
  // J+ raises level 1 to level 2.
  CHECK(ops.j_plus(coordinate_of_level(2), coordinate_of_level(1)) == doctest::Approx(std::sqrt(3.0)));
  const auto flipped = reverse_basis(ops.j3);
  CHECK(flipped == RealMatrix4::diagonal({-1.5, -0.5, 0.5, 1.5}));
  CHECK(reverse_basis(flipped) == ops.j3);
}
