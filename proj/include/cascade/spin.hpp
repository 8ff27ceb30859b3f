#pragma once

#include "cascade/linalg.hpp"

namespace cascade {

/// Spin-3/2 generators in the conventional m-ordered basis: coordinate 0
/// carries m = +3/2 (atomic level 4) and coordinate 3 carries m = -3/2
/// (atomic level 1).
struct SpinOperators {
  RealMatrix4 j_plus;
  RealMatrix4 j_minus;
  RealMatrix4 j3;
};

/// J+ has superdiagonal (sqrt3, 2, sqrt3); J- = J+^T; J3 = diag(3/2, 1/2, -1/2, -3/2).
SpinOperators spin32_generators();

/// max |entry| over [J+, J-] - 2 J3 and [J3, J+] - J+.
double commutator_residual(const SpinOperators& ops);

/// max |entry| of J+J- + J3^2 - J3 - (15/4) I.
double casimir_residual(const SpinOperators& ops);

/// Coordinate (0-based) in the spin basis that holds atomic level 1..4.
constexpr std::size_t coordinate_of_level(int level) { return static_cast<std::size_t>(4 - level); }

/// Magnetic quantum number of atomic level 1..4 (level 1 -> -3/2).
constexpr double magnetic_number(int level) { return static_cast<double>(level) - 2.5; }

/// Re-express a matrix given in spin-coordinate order in level order (and
/// back; the map is an involution).
template <class T>
Matrix4<T> reverse_basis(const Matrix4<T>& m) {
  Matrix4<T> r;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r(i, j) = m(3 - i, 3 - j);
  return r;
}

}  // namespace cascade
