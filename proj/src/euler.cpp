#include "cascade/euler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cascade {

bool EulerAngles::in_principal_range() const {
  return std::all_of(theta.begin(), theta.end(),
                     [](double x) { return std::isfinite(x) && x > -std::numbers::pi && x <= std::numbers::pi; });
}

double EulerAngles::max_abs_diff(const EulerAngles& other) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) worst = std::max(worst, std::abs(theta[i] - other.theta[i]));
  return worst;
}

RotationMatrix4 euler_rotation_matrix(const EulerAngles& a) {
  std::array<double, 7> s{}, c{};
  for (std::size_t i = 1; i <= 6; ++i) {
    s[i] = std::sin(a.theta[i - 1]);
    c[i] = std::cos(a.theta[i - 1]);
  }

  RotationMatrix4 t;
  t(0, 0) = c[1] * c[5] + s[1] * s[3] * s[4] * s[5];
  t(0, 1) = -c[1] * s[5] * s[6] + s[1] * c[3] * c[6] + s[1] * s[3] * s[4] * c[5] * s[6];
  t(0, 2) = s[1] * s[3] * c[4];
  t(0, 3) = -c[1] * s[5] * c[6] - s[1] * c[3] * s[6] + s[1] * s[3] * s[4] * c[5] * c[6];

  // Rows 2 and 3 share the same structure with (c2, s2) -> (s2, -c2).
  const double x2 = c[1] * c[2] * s[3] - s[2] * c[3];
  const double y2 = c[1] * c[2] * c[3] + s[2] * s[3];
  t(1, 0) = -s[1] * c[2] * c[5] + x2 * s[4] * s[5];
  t(1, 1) = s[1] * c[2] * s[5] * s[6] + y2 * c[6] + x2 * s[4] * c[5] * s[6];
  t(1, 2) = x2 * c[4];
  t(1, 3) = s[1] * c[2] * s[5] * c[6] - y2 * s[6] + x2 * s[4] * c[5] * c[6];

  const double x3 = c[1] * s[2] * s[3] + c[2] * c[3];
  const double y3 = c[1] * s[2] * c[3] - c[2] * s[3];
  t(2, 0) = -s[1] * s[2] * c[5] + x3 * s[4] * s[5];
  t(2, 1) = s[1] * s[2] * s[5] * s[6] + y3 * c[6] + x3 * s[4] * c[5] * s[6];
  t(2, 2) = x3 * c[4];
  t(2, 3) = s[1] * s[2] * s[5] * c[6] - y3 * s[6] + x3 * s[4] * c[5] * c[6];

  t(3, 0) = c[4] * s[5];
  t(3, 1) = c[4] * c[5] * s[6];
  t(3, 2) = -s[4];
  t(3, 3) = c[4] * c[5] * c[6];
  return t;
}

}  // namespace cascade
