#pragma once

#include <array>

#include "cascade/linalg.hpp"

namespace cascade {

/// Six rotation angles parametrizing a 4x4 orthogonal matrix, in radians.
struct EulerAngles {
  std::array<double, 6> theta{};

  /// Angle 1..6.
  double operator()(int i) const { return theta.at(static_cast<std::size_t>(i - 1)); }

  /// True when every angle is finite and inside (-pi, pi].
  bool in_principal_range() const;

  double max_abs_diff(const EulerAngles& other) const;
};

/// Orthogonal matrix built entrywise from the six angles (s_i = sin theta_i,
/// c_i = cos theta_i). All-zero angles give the identity.
RotationMatrix4 euler_rotation_matrix(const EulerAngles& a);

}  // namespace cascade
