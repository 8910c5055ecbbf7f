#pragma once

#include <cmath>
#include <numbers>

namespace logse::special {

/// Scaled complementary error function erfcx(y) = exp(y^2) erfc(y).
///
/// Direct evaluation while exp(y^2) is representable, asymptotic series in
/// 1/y^2 beyond (relative error below 1e-13 for y > 26).
inline double erfcx(double y) {
  if (y < 26.0) return std::exp(y * y) * std::erfc(y);
  const double inv2 = 1.0 / (y * y);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 6; ++k) {
    term *= -(2.0 * k - 1.0) * 0.5 * inv2;
    sum += term;
  }
  return sum / (y * std::sqrt(std::numbers::pi));
}

}  // namespace logse::special
