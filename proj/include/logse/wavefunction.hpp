#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "logse/errors.hpp"
#include "logse/grid.hpp"

namespace logse {

using Complex = std::complex<double>;

/// How a radial profile is normalized.
enum class Measure {
  /// psi(r) of a spherically symmetric state: N = 4 pi * int r^2 |psi|^2 dr.
  spherical,
  /// R(r) of a separable state R(r) Y(theta, phi) with int |Y|^2 dOmega = 1:
  /// N = int r^2 |R|^2 dr.
  radial,
};

inline std::string_view to_string(Measure m) {
  return m == Measure::spherical ? "spherical" : "radial";
}

/// Prefactor multiplying int r^2 (...) dr for the given measure.
inline double measure_prefactor(Measure m) {
  return m == Measure::spherical ? 4.0 * std::numbers::pi : 1.0;
}

/// Exponent gamma of f ~ c r^gamma near the origin, read off the first two
/// nodes. Empty when f changes sign or vanishes there.
inline std::optional<double> origin_exponent(const RadialGrid& grid, std::span<const double> f) {
  const double f0 = f[0];
  const double f1 = f[1];
  if (f0 == 0.0 || f1 == 0.0 || (f0 > 0.0) != (f1 > 0.0)) return std::nullopt;
  return std::log(f1 / f0) / std::log(grid.r(1) / grid.r(0));
}

/// Grid quadrature plus the [0, r_min] cap f(r_min) r_min / (gamma + 1),
/// gamma clamped to [0, 4] (integrands here are bounded near the origin).
inline double radial_integral(const RadialGrid& grid, std::span<const double> f) {
  const double gamma = std::clamp(origin_exponent(grid, f).value_or(2.0), 0.0, 4.0);
  return grid.integrate(f) + f[0] * grid.r_min() / (gamma + 1.0);
}

struct RadialWavefunction {
  GridPtr grid;
  std::vector<Complex> values;
  double target_norm = 1.0;
  Measure measure = Measure::spherical;
  /// Separation constant L^2 (radial measure only).
  double angular_sq = 0.0;
  /// Angular entropy S_Y = -int |Y|^2 ln |Y|^2 dOmega (radial measure only).
  double angular_entropy = 0.0;

  RadialWavefunction() = default;
  RadialWavefunction(GridPtr g, std::vector<Complex> v, double n,
                     Measure m = Measure::spherical, double l_sq = 0.0, double s_y = 0.0)
      : grid(std::move(g)), values(std::move(v)), target_norm(n), measure(m),
        angular_sq(l_sq), angular_entropy(s_y) {
    detail::require(grid != nullptr, "RadialWavefunction: null grid");
    detail::require(values.size() == grid->size(),
                    "RadialWavefunction: value count does not match grid");
    detail::require(std::isfinite(target_norm) && target_norm > 0.0,
                    "RadialWavefunction: target norm must be positive");
  }

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] double r(std::size_t i) const { return grid->r(i); }
  [[nodiscard]] double prefactor() const { return measure_prefactor(measure); }

  [[nodiscard]] std::vector<double> density() const {
    std::vector<double> rho(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) rho[i] = std::norm(values[i]);
    return rho;
  }

  /// Quadrature norm int w(r) |psi|^2 dr, w = 4 pi r^2 or r^2.
  [[nodiscard]] double norm() const {
    std::vector<double> f(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double ri = grid->r(i);
      f[i] = ri * ri * std::norm(values[i]);
    }
    return prefactor() * radial_integral(*grid, f);
  }

  [[nodiscard]] bool is_normalized(double rel_tol = 1e-6) const {
    return std::abs(norm() - target_norm) <= rel_tol * target_norm;
  }

  RadialWavefunction& normalize() {
    const double current = norm();
    detail::require(current > 0.0 && std::isfinite(current),
                    "RadialWavefunction: cannot normalize a zero or non-finite state");
    const double scale = std::sqrt(target_norm / current);
    for (auto& v : values) v *= scale;
    return *this;
  }
};

/// Sample a real radial function onto a grid.
template <class F>
RadialWavefunction sample_wavefunction(GridPtr grid, F&& f, double target_norm,
                                       Measure measure = Measure::spherical,
                                       double angular_sq = 0.0, double angular_entropy = 0.0) {
  std::vector<Complex> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Complex(f(grid->r(i)), 0.0);
  return RadialWavefunction(std::move(grid), std::move(v), target_norm, measure, angular_sq,
                            angular_entropy);
}

/// Relative L2 distance ||a - b|| / ||b|| in the measure of b.
inline double relative_l2_error(const RadialWavefunction& a, const RadialWavefunction& b) {
  detail::require(a.size() == b.size(), "relative_l2_error: size mismatch");
  const auto& grid = *b.grid;
  std::vector<double> diff(a.size()), ref(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double r2 = grid.r(i) * grid.r(i);
    diff[i] = r2 * std::norm(a.values[i] - b.values[i]);
    ref[i] = r2 * std::norm(b.values[i]);
  }
  return std::sqrt(radial_integral(grid, diff) / radial_integral(grid, ref));
}

}  // namespace logse
