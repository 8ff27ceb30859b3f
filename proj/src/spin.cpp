#include "cascade/spin.hpp"

#include <algorithm>
#include <cmath>

namespace cascade {

namespace {

RealMatrix4 commutator(const RealMatrix4& a, const RealMatrix4& b) { return a * b - b * a; }

}  // namespace

SpinOperators spin32_generators() {
  const double r3 = std::sqrt(3.0);
  SpinOperators ops;
  ops.j_plus(0, 1) = r3;
  ops.j_plus(1, 2) = 2.0;
  ops.j_plus(2, 3) = r3;
  ops.j_minus = ops.j_plus.transpose();
  ops.j3 = RealMatrix4::diagonal({1.5, 0.5, -0.5, -1.5});
  return ops;
}

double commutator_residual(const SpinOperators& ops) {
  const double lowering = max_abs(commutator(ops.j_plus, ops.j_minus) - ops.j3 * 2.0);
  const double raising = max_abs(commutator(ops.j3, ops.j_plus) - ops.j_plus);
  return std::max(lowering, raising);
}

double casimir_residual(const SpinOperators& ops) {
  const RealMatrix4 c = ops.j_plus * ops.j_minus + ops.j3 * ops.j3 - ops.j3;
  return max_abs(c - RealMatrix4::identity() * 3.75);
}

}  // namespace cascade
