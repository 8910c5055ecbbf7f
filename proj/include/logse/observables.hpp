#pragma once

// Entropy, temperature, information and energy functionals of a radial
// wavefunction.

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "logse/errors.hpp"
#include "logse/scales.hpp"
#include "logse/wavefunction.hpp"

namespace logse {

/// Densities below this are treated as exact zeros in x ln x.
inline constexpr double density_underflow = 1e-300;

namespace detail {

inline double x_log_x(double x) { return x < density_underflow ? 0.0 : x * std::log(x); }

}  // namespace detail

/// Radial entropy density s(r), with S = int s(r) dr.
///
/// Spherical measure: s = -4 pi r^2 |psi|^2 ln |psi|^2.
/// Radial measure:    s = r^2 |R|^2 (S_Y - ln |R|^2), the angular factor
/// contributing its own entropy S_Y per unit norm.
inline std::vector<double> entropy_density(const RadialWavefunction& psi) {
  std::vector<double> s(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double r = psi.r(i);
    const double rho = std::norm(psi.values[i]);
    if (psi.measure == Measure::spherical) {
      s[i] = -4.0 * std::numbers::pi * r * r * detail::x_log_x(rho);
    } else {
      const double rho_part = rho < density_underflow ? 0.0 : rho;
      s[i] = r * r * (psi.angular_entropy * rho_part - detail::x_log_x(rho));
    }
  }
  return s;
}

struct EntropyEstimate {
  double value = 0.0;
  /// |s(r)| at the outer boundary relative to max |s|.
  double edge_fraction = 0.0;
  /// Set when the grid cuts off a non-negligible part of the density.
  bool truncated = false;
};

inline EntropyEstimate entropy_estimate(const RadialWavefunction& psi,
                                        double truncation_tol = 1e-10) {
  const auto s = entropy_density(psi);
  EntropyEstimate e;
  e.value = radial_integral(*psi.grid, s);
  double peak = 0.0;
  for (double v : s) peak = std::max(peak, std::abs(v));
  e.edge_fraction = peak > 0.0 ? std::abs(s.back()) / peak : 0.0;
  e.truncated = e.edge_fraction > truncation_tol;
  return e;
}

/// Everett-Hirschman entropy S = -int |psi|^2 ln |psi|^2 d^3r.
inline double entropy(const RadialWavefunction& psi) {
  return radial_integral(*psi.grid, entropy_density(psi));
}

/// Entropy-conjugate temperature T(r) = b0 - q / r^2, the coupling itself.
inline double quantum_temperature(const CouplingProfile& profile, double r) {
  detail::require(std::isfinite(r) && r > 0.0, "quantum_temperature: r must be > 0");
  return profile.evaluate(r);
}

/// Information content -log2 |psi|^2 of a density value; +inf at zero density.
inline double information_content(double density) {
  detail::require(!std::isnan(density) && density >= 0.0,
                  "information_content: density must be >= 0");
  if (density == 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(density) / std::numbers::ln2;
}

/// Information content at radius r (density linearly interpolated).
inline double information_content(const RadialWavefunction& psi, double r) {
  const auto rho = psi.density();
  return information_content(psi.grid->interpolate(rho, r));
}

struct ObservableReport {
  double entropy = 0.0;
  std::vector<double> entropy_density;
  std::vector<double> temperature;
  std::vector<double> information_content;
  double kinetic = 0.0;
  double potential = 0.0;
  /// int T(r) s(r) dr; equals T S when the temperature is uniform.
  double entropy_term = 0.0;
  double reference_offset = 0.0;
  double internal_energy = 0.0;
};

struct InternalEnergyOptions {
  /// Subtracted from the internal energy (temperature counted from a reference).
  double reference_offset = 0.0;
  double norm_tolerance = 1e-6;
};

/// Internal energy <H> + int T(r) s(r) dr with H = -lap + V_ext.
///
/// Kinetic energy is int w(r) |psi'|^2 dr in units where hbar^2 / 2m = 1
/// (plus L^2 int |R|^2 dr for the radial measure).
inline ObservableReport internal_energy(const RadialWavefunction& psi,
                                        const CouplingProfile& profile,
                                        std::span<const double> v_ext,
                                        const InternalEnergyOptions& opts = {}) {
  const auto& grid = *psi.grid;
  detail::require(v_ext.empty() || v_ext.size() == psi.size(),
                  "internal_energy: V_ext must be empty or match the grid");
  detail::require(psi.is_normalized(opts.norm_tolerance),
                  "internal_energy: wavefunction is not normalized to its target norm");

  const std::size_t n = psi.size();
  const auto dpsi = grid.derivative<Complex>(psi.values);
  std::vector<double> kin(n), pot(n, 0.0), centrifugal(n, 0.0), ts(n);

  ObservableReport rep;
  rep.entropy_density = entropy_density(psi);
  rep.temperature.resize(n);
  rep.information_content.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid.r(i);
    const double rho = std::norm(psi.values[i]);
    kin[i] = r * r * std::norm(dpsi[i]);
    if (!v_ext.empty()) pot[i] = r * r * v_ext[i] * rho;
    if (psi.measure == Measure::radial) centrifugal[i] = psi.angular_sq * rho;
    rep.temperature[i] = profile.evaluate(r);
    rep.information_content[i] = information_content(rho);
    ts[i] = rep.temperature[i] * rep.entropy_density[i];
  }
  const double pre = psi.prefactor();
  rep.entropy = radial_integral(grid, rep.entropy_density);
  rep.kinetic = pre * radial_integral(grid, kin);
  if (psi.measure == Measure::radial && psi.angular_sq != 0.0) {
    rep.kinetic += radial_integral(grid, centrifugal);
  }
  rep.potential = pre * radial_integral(grid, pot);
  rep.entropy_term = radial_integral(grid, ts);
  rep.reference_offset = opts.reference_offset;
  rep.internal_energy = rep.kinetic + rep.potential + rep.entropy_term - opts.reference_offset;
  return rep;
}

struct GpExpansion {
  double log_term;
  double cubic_term;
  double difference;
};

/// Compare ln x with its leading expansion x - 1 around unit density.
inline GpExpansion gp_expansion_error(double x) {
  detail::require(std::isfinite(x) && x > 0.0, "gp_expansion_error: x must be > 0");
  const double lx = std::log(x);
  const double cubic = x - 1.0;
  return {lx, cubic, lx - cubic};
}

/// Lagrange remainder bound (x - 1)^2 / (2 min(1, x)^2) on |ln x - (x - 1)|.
inline double gp_remainder_bound(double x) {
  const double m = std::min(1.0, x);
  return (x - 1.0) * (x - 1.0) / (2.0 * m * m);
}

}  // namespace logse
