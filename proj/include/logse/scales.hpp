#pragma once

// Physical <-> dimensionless conversions for the variable-coupling
// logarithmic wave equation.
//
// Lengths are measured in units of a, times in units of tau = 2 m a^2 / hbar,
// energies in units of hbar / tau. In these units the coupling is
//
//     b(r) = b0 - q / r^2,   b0 = 2 m b0_phys a^2 / hbar^2,   q = 2 m q_phys / hbar^2.
//
// The Boltzmann constant is 1 everywhere.

#include <cmath>
#include <optional>

#include "logse/errors.hpp"

namespace logse {

class ScaleSet {
 public:
  ScaleSet(double hbar, double mass, double a) : hbar_(hbar), mass_(mass), a_(a) {
    detail::require(std::isfinite(hbar) && std::isfinite(mass) && std::isfinite(a),
                    "ScaleSet: hbar, mass and a must be finite");
    detail::require(hbar > 0.0 && mass > 0.0 && a > 0.0,
                    "ScaleSet: hbar, mass and a must be positive");
  }

  [[nodiscard]] double hbar() const noexcept { return hbar_; }
  [[nodiscard]] double mass() const noexcept { return mass_; }
  [[nodiscard]] double length_unit() const noexcept { return a_; }
  /// Always recomputed from (hbar, mass, a).
  [[nodiscard]] double tau() const noexcept { return 2.0 * mass_ * a_ * a_ / hbar_; }
  [[nodiscard]] double energy_unit() const noexcept { return hbar_ / tau(); }

 private:
  double hbar_;
  double mass_;
  double a_;
};

/// The pair (b0, q) defining b(r) = b0 - q / r^2 in dimensionless units.
struct CouplingProfile {
  double b0 = 0.0;
  double q = 0.0;

  [[nodiscard]] double evaluate(double r) const noexcept { return b0 - q / (r * r); }

  /// Radius where the coupling changes sign, when q / b0 > 0.
  [[nodiscard]] std::optional<double> sign_change_radius() const noexcept {
    if (b0 == 0.0 || q / b0 <= 0.0) return std::nullopt;
    return std::sqrt(q / b0);
  }

  friend bool operator==(const CouplingProfile&, const CouplingProfile&) = default;
};

/// Physical coupling constants (b0 in energy units, q in energy * length^2).
struct PhysicalCoupling {
  double b0 = 0.0;
  double q = 0.0;
};

inline CouplingProfile to_dimensionless(double b0, double q, const ScaleSet& scales) {
  detail::require(std::isfinite(b0) && std::isfinite(q),
                  "to_dimensionless: coupling constants must be finite");
  const double m = scales.mass();
  const double a = scales.length_unit();
  const double hbar = scales.hbar();
  return {2.0 * m * b0 * a * a / (hbar * hbar), 2.0 * m * q / (hbar * hbar)};
}

inline PhysicalCoupling to_physical(const CouplingProfile& profile, const ScaleSet& scales) {
  detail::require(std::isfinite(profile.b0) && std::isfinite(profile.q),
                  "to_physical: coupling constants must be finite");
  const double m = scales.mass();
  const double a = scales.length_unit();
  const double hbar = scales.hbar();
  return {profile.b0 * hbar * hbar / (2.0 * m * a * a), profile.q * hbar * hbar / (2.0 * m)};
}

/// Coupling induced by a temperature offset, b = K (T - T0).
///
/// K is not fixed by the theory (only b ~ T is); callers calibrate it.
inline double coupling_from_temperature(double temperature, double reference_temperature,
                                        double k_scale = 1.0) {
  detail::require(std::isfinite(temperature) && std::isfinite(reference_temperature) &&
                      std::isfinite(k_scale),
                  "coupling_from_temperature: inputs must be finite");
  detail::require(k_scale > 0.0, "coupling_from_temperature: k_scale must be positive");
  return k_scale * (temperature - reference_temperature);
}

}  // namespace logse
