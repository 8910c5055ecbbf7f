#pragma once

// Independent reference values for the tests: adaptive Gauss-Kronrod on
// [0, inf) straight from the defining integrals.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

namespace oracle {

template <class F>
double integrate_half_line(F f) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(f, 0.0, std::numeric_limits<double>::infinity(),
                                              12, 1e-13);
}

template <class F>
double integrate(F f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-13);
}

/// 4 pi int r^2 exp(log_rho(r)) dr
template <class LogRho>
double spherical_norm(LogRho log_rho) {
  return 4.0 * std::numbers::pi *
         integrate_half_line([&](double r) { return r * r * std::exp(log_rho(r)); });
}

/// -4 pi int r^2 rho ln rho dr
template <class LogRho>
double spherical_entropy(LogRho log_rho) {
  return -4.0 * std::numbers::pi * integrate_half_line([&](double r) {
    const double l = log_rho(r);
    return r * r * std::exp(l) * l;
  });
}

/// Slope k with 4 pi int r^2 exp(2 k r - b r^2) dr = n, by bisection.
inline double q1_slope_by_bisection(double n, double b) {
  auto norm = [b](double k) {
    return spherical_norm([=](double r) { return 2.0 * k * r - b * r * r; });
  };
  double lo = -10.0, hi = 10.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    (norm(mid) < n ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
