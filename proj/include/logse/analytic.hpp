#pragma once

// Closed-form stationary solutions of
//
//     lap(psi) + (b0 - q / r^2) ln|psi|^2 psi + omega psi = 0
//
// for the four coupling regimes that admit them:
//
//   general         b0 != 0, q not in {0, 1}: Gaussian, b0 forced to pi / N^(2/3)
//   q_one           q = 1: Gaussian with a linear exponent k r, k from a
//                   transcendental normalization condition
//   constant        q = 0: the Gausson
//   inverse_square  b0 = 0, q = 1: exponential radial factor of a separable
//                   state R(r) Y(theta, phi), normalized with int r^2 R^2 dr = N
//
// Every quantity is evaluated from its exact expression; nothing here is
// interpolated from a grid.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "logse/errors.hpp"
#include "logse/scales.hpp"
#include "logse/special_functions.hpp"
#include "logse/wavefunction.hpp"

namespace logse {

enum class SolutionCase { general, q_one, constant, inverse_square };

inline std::string_view to_string(SolutionCase c) {
  switch (c) {
    case SolutionCase::general: return "general";
    case SolutionCase::q_one: return "q1";
    case SolutionCase::constant: return "constant";
    case SolutionCase::inverse_square: return "inverse_square";
  }
  return "unknown";
}

inline SolutionCase solution_case_from_string(std::string_view name) {
  if (name == "general") return SolutionCase::general;
  if (name == "q1" || name == "q_one") return SolutionCase::q_one;
  if (name == "constant") return SolutionCase::constant;
  if (name == "inverse_square" || name == "inverse-square") return SolutionCase::inverse_square;
  throw DomainError("unknown case '" + std::string(name) +
                    "' (expected general, q1, constant or inverse_square)");
}

struct AnalyticSolution {
  SolutionCase kind = SolutionCase::constant;
  double norm = 1.0;
  CouplingProfile profile;
  double omega = 0.0;
  std::optional<double> k_tilde;
  std::optional<double> mu_sq;
  double angular_sq = 0.0;
  double angular_entropy = 0.0;

  [[nodiscard]] Measure measure() const {
    return kind == SolutionCase::inverse_square ? Measure::radial : Measure::spherical;
  }

  /// ln |psi(r)|^2, exact (no underflow in the tails).
  [[nodiscard]] double log_density(double r) const {
    const double b = profile.b0;
    switch (kind) {
      case SolutionCase::general: return -b * r * r;
      case SolutionCase::q_one: return 2.0 * *k_tilde * r - b * r * r;
      case SolutionCase::constant:
        return std::log(std::pow(b / std::numbers::pi, 1.5) * norm) - b * r * r;
      case SolutionCase::inverse_square: return -2.0 * *mu_sq * r - angular_sq;
    }
    return 0.0;
  }

  [[nodiscard]] double psi(double r) const { return std::exp(0.5 * log_density(r)); }

  /// Radial Laplacian psi'' + 2 psi' / r, by exact differentiation.
  [[nodiscard]] double laplacian(double r) const {
    const double b = profile.b0;
    const double p = psi(r);
    switch (kind) {
      case SolutionCase::general:
      case SolutionCase::constant: return (b * b * r * r - 3.0 * b) * p;
      case SolutionCase::q_one: {
        const double slope = *k_tilde - b * r;
        return (slope * slope - b + 2.0 * slope / r) * p;
      }
      case SolutionCase::inverse_square: {
        const double mu2 = *mu_sq;
        return (mu2 * mu2 - 2.0 * mu2 / r) * p;
      }
    }
    return 0.0;
  }

  /// Pointwise residual of the stationary equation (radial equation with the
  /// L^2 / r^2 term for the separable case).
  [[nodiscard]] double stationary_residual(double r) const {
    const double p = psi(r);
    double res = laplacian(r) + profile.evaluate(r) * log_density(r) * p + omega * p;
    if (measure() == Measure::radial) res -= angular_sq / (r * r) * p;
    return res;
  }

  /// Quantum temperature profile; identical to the coupling.
  [[nodiscard]] double temperature(double r) const { return profile.evaluate(r); }

  /// Radial entropy density in closed form.
  [[nodiscard]] double entropy_density_closed_form(double r) const {
    constexpr double pi = std::numbers::pi;
    const double b = profile.b0;
    switch (kind) {
      case SolutionCase::general: {
        const double n23 = std::cbrt(norm) * std::cbrt(norm);
        return 4.0 * pi * pi / n23 * std::pow(r, 4) * std::exp(-pi / n23 * r * r);
      }
      case SolutionCase::q_one: {
        const double k = *k_tilde;
        return 4.0 * pi * r * r * r * (b * r - 2.0 * k) * std::exp(2.0 * k * r - b * r * r);
      }
      case SolutionCase::constant: {
        const double x = log_argument();
        return 4.0 * std::pow(b, 1.5) * norm / std::sqrt(pi) * r * r *
               (b * r * r - 1.5 * std::log(x)) * std::exp(-b * r * r);
      }
      case SolutionCase::inverse_square: {
        const double mu2 = *mu_sq;
        return 8.0 * std::pow(mu2, 4) * norm * r * r * r *
               (1.0 + (angular_sq + angular_entropy) / (2.0 * mu2 * r)) *
               std::exp(-2.0 * mu2 * r);
      }
    }
    return 0.0;
  }

  /// Integrated entropy in closed form (constant case: additive logarithm).
  [[nodiscard]] double entropy_closed_form() const {
    const double b = profile.b0;
    switch (kind) {
      case SolutionCase::general: return 1.5 * norm;
      case SolutionCase::q_one: {
        const double k = *k_tilde;
        return (norm * (3.0 * b * b - 4.0 * std::pow(k, 4)) - 4.0 * std::numbers::pi * k) /
               (2.0 * b * (b + 2.0 * k * k));
      }
      case SolutionCase::constant: return 1.5 * (norm - std::log(log_argument()));
      case SolutionCase::inverse_square: return norm * (angular_sq + angular_entropy + 3.0);
    }
    return 0.0;
  }

  /// b0 N^(2/3) / pi, the argument of the logarithm in the constant case.
  [[nodiscard]] double log_argument() const {
    return profile.b0 * std::cbrt(norm) * std::cbrt(norm) / std::numbers::pi;
  }

  [[nodiscard]] RadialWavefunction sample(GridPtr grid) const {
    return sample_wavefunction(
        std::move(grid), [this](double r) { return psi(r); }, norm, measure(), angular_sq,
        angular_entropy);
  }
};

namespace detail {

inline void require_norm(double n, const char* who) {
  require(std::isfinite(n) && n >= 1.0, std::string(who) + ": N must be finite and >= 1");
}

}  // namespace detail

/// b0 != 0, q not in {0, 1}. The coupling constant is an eigenvalue here,
/// so the returned profile carries b0 = pi / N^(2/3).
inline AnalyticSolution case_general(double n, double q) {
  detail::require_norm(n, "case_general");
  detail::require(std::isfinite(q), "case_general: q must be finite");
  detail::require(q != 0.0, "case_general: q = 0 is the constant-coupling case (use case_constant)");
  detail::require(q != 1.0, "case_general: q = 1 is handled by case_q1");
  const double b0 = std::numbers::pi / (std::cbrt(n) * std::cbrt(n));
  AnalyticSolution s;
  s.kind = SolutionCase::general;
  s.norm = n;
  s.profile = {b0, q};
  s.omega = b0 * (3.0 - q);
  return s;
}

/// Left minus right side of the normalization condition for the q = 1 case,
///
///   sqrt(pi/b0) (b0/2 + k^2) [1 + erf(k/sqrt(b0))] e^(k^2/b0) - (N b0^2 / (2 pi) - k).
///
/// Strictly increasing in k; its unique zero is the normalizing slope.
inline double transcendental_residual(double k, double n, double b0) {
  constexpr double pi = std::numbers::pi;
  const double sb = std::sqrt(b0);
  // [1 + erf(x)] e^(x^2) = erfcx(-x)
  const double lhs = std::sqrt(pi / b0) * (0.5 * b0 + k * k) * special::erfcx(-k / sb);
  const double rhs = n * b0 * b0 / (2.0 * pi) - k;
  return lhs - rhs;
}

/// Solve the q = 1 normalization condition for k by bracketed bisection down
/// to adjacent doubles. Accepts any N > 0 (the k = 0 point N = (pi/b0)^(3/2)
/// lies below 1 for b0 > pi).
inline double solve_k_transcendental(double n, double b0) {
  detail::require(std::isfinite(n) && n > 0.0, "solve_k_transcendental: N must be > 0");
  detail::require(std::isfinite(b0) && b0 > 0.0, "solve_k_transcendental: b0 must be > 0");
  const double sb = std::sqrt(b0);
  auto f = [&](double k) { return transcendental_residual(k, n, b0); };

  double lo = -sb, hi = sb;
  double flo = f(lo), fhi = f(hi);
  // exp(k^2 / b0) overflows past k / sqrt(b0) ~ 26.
  constexpr double max_hi = 25.0;
  constexpr double max_lo = 1e6;
  while (flo > 0.0 && -lo / sb < max_lo) {
    lo *= 2.0;
    flo = f(lo);
  }
  while (fhi < 0.0 && hi / sb < max_hi) {
    hi = std::min(2.0 * hi, max_hi * sb);
    fhi = f(hi);
    if (hi >= max_hi * sb) break;
  }
  if (!(flo <= 0.0 && fhi >= 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "solve_k_transcendental: no sign change in bracket [" << lo << ", " << hi
        << "], F(lo) = " << flo << ", F(hi) = " << fhi << " (N = " << n << ", b0 = " << b0
        << ")";
    throw ConvergenceError(msg.str());
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (fm < 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

/// q = 1 with free b0 > 0.
inline AnalyticSolution case_q1(double n, double b0) {
  detail::require_norm(n, "case_q1");
  detail::require(std::isfinite(b0) && b0 > 0.0, "case_q1: b0 must be > 0");
  const double k = solve_k_transcendental(n, b0);
  AnalyticSolution s;
  s.kind = SolutionCase::q_one;
  s.norm = n;
  s.profile = {b0, 1.0};
  s.k_tilde = k;
  s.omega = 2.0 * b0 - k * k;
  return s;
}

/// q = 0: the Gausson.
inline AnalyticSolution case_constant(double n, double b0) {
  detail::require_norm(n, "case_constant");
  detail::require(std::isfinite(b0) && b0 > 0.0, "case_constant: b0 must be > 0");
  AnalyticSolution s;
  s.kind = SolutionCase::constant;
  s.norm = n;
  s.profile = {b0, 0.0};
  s.omega = 3.0 * b0 * (1.0 - 0.5 * std::log(s.log_argument()));
  return s;
}

/// b0 = 0, q forced to 1. The angular factor is not solved; (L^2, S_Y)
/// parameterize it.
inline AnalyticSolution case_inverse_square(double n, double angular_sq = 0.0,
                                            double angular_entropy = 0.0) {
  detail::require_norm(n, "case_inverse_square");
  detail::require(std::isfinite(angular_sq) && angular_sq >= 0.0,
                  "case_inverse_square: L^2 must be finite and >= 0");
  detail::require(std::isfinite(angular_entropy), "case_inverse_square: S_Y must be finite");
  AnalyticSolution s;
  s.kind = SolutionCase::inverse_square;
  s.norm = n;
  s.profile = {0.0, 1.0};
  s.angular_sq = angular_sq;
  s.angular_entropy = angular_entropy;
  const double mu2 = std::exp(-angular_sq / 3.0) / std::cbrt(4.0 * n);
  s.mu_sq = mu2;
  s.omega = -mu2 * mu2;
  return s;
}

/// Effective external potential (q / r^2 - b0) ln |psi_s(r)|^2: the linear
/// potential whose Schrodinger equation has psi_s as an eigenstate.
inline double effective_potential(const AnalyticSolution& sol, double r) {
  detail::require(std::isfinite(r) && r > 0.0, "effective_potential: r must be > 0");
  return (sol.profile.q / (r * r) - sol.profile.b0) * sol.log_density(r);
}

/// Case-specific closed form of the effective potential.
///
/// For the constant case this is b0^2 r^2, which differs from
/// effective_potential() by the constant -b0 ln((b0/pi)^(3/2) N); the two
/// coincide when b0 N^(2/3) = pi. A constant shift leaves the eigenstate
/// unchanged and moves the eigenvalue by the same amount.
inline double effective_potential_closed_form(const AnalyticSolution& sol, double r) {
  detail::require(std::isfinite(r) && r > 0.0, "effective_potential_closed_form: r must be > 0");
  const double b = sol.profile.b0;
  switch (sol.kind) {
    case SolutionCase::general: {
      const double omega_eff = 2.0 * b;
      const double q_n = sol.profile.q / b;
      return 0.25 * omega_eff * omega_eff * (r * r - q_n);
    }
    case SolutionCase::q_one: {
      const double k = *sol.k_tilde;
      const double d = r - k / b;
      return 2.0 * k / r + b * b * d * d - b - k * k;
    }
    case SolutionCase::constant: return b * b * r * r;
    case SolutionCase::inverse_square:
      return -2.0 * *sol.mu_sq / r - sol.angular_sq / (r * r);
  }
  return 0.0;
}

/// Candidate closed forms for the constant-case entropy.
struct ConstantEntropyForms {
  /// (3/2) [N - ln(b0 N^(2/3) / pi)]
  double additive_log;
  /// (3/2) N [1 - ln(b0 N^(2/3) / pi)], the logarithm multiplied by N.
  double n_multiplied;
  /// N (9/2 - omega / b0), rewritten through the eigenvalue.
  double via_omega;
};

inline ConstantEntropyForms constant_entropy_forms(const AnalyticSolution& sol) {
  detail::require(sol.kind == SolutionCase::constant,
                  "constant_entropy_forms: solution is not the constant case");
  const double n = sol.norm;
  const double lx = std::log(sol.log_argument());
  return {1.5 * (n - lx), 1.5 * n * (1.0 - lx), n * (4.5 - sol.omega / sol.profile.b0)};
}

/// N-independent combination omega * S^(2/3) for the general case.
inline double general_case_invariant(double q) {
  return std::numbers::pi * std::pow(1.5, 2.0 / 3.0) * (3.0 - q);
}

}  // namespace logse
