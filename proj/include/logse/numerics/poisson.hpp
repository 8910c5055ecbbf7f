#pragma once

// Spherically symmetric Poisson problem
//
//   phi'' + (2/r) phi' = rhs(r),   r > 0,
//
// plus a point charge at the origin contributing q/r. The regular part is
// integrated by Gauss's law: r^2 phi'(r) = int_0^r s^2 rhs(s) ds, then phi by
// integrating inward from the boundary value at r_max. The point charge is
// never put on the grid.

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "logse/errors.hpp"
#include "logse/grid.hpp"
#include "logse/wavefunction.hpp"

namespace logse::numerics {

/// Fits with a larger (column-scaled) condition number are rejected.
inline constexpr double max_fit_condition = 1e10;

struct AsymptoticFit {
  double q = 0.0;
  double b0 = 0.0;
  double phi0 = 0.0;
  double condition_number = 0.0;
  double rms_residual = 0.0;
  std::size_t points = 0;
};

struct FieldState {
  GridPtr grid;
  std::vector<double> phi;
  /// d phi / dr from Gauss's law (not a numerical derivative).
  std::vector<double> dphi;
  std::vector<double> rhs;
  double point_charge = 0.0;
  double boundary_value = 0.0;
  /// Fit of phi = phi0 + q/r + b0 r on the outer half of the grid.
  AsymptoticFit fit;

  [[nodiscard]] double extracted_q() const noexcept { return fit.q; }
  [[nodiscard]] double extracted_b0() const noexcept { return fit.b0; }
};

/// Least-squares fit of phi against {1, 1/r, r} on nodes with
/// r >= (r_min + r_max) / 2.
inline AsymptoticFit extract_coupling_asymptotics(const RadialGrid& grid,
                                                  std::span<const double> phi) {
  detail::require(phi.size() == grid.size(), "extract_coupling_asymptotics: size mismatch");
  const double r_cut = 0.5 * (grid.r_min() + grid.r_max());
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.r(i) >= r_cut) rows.push_back(i);
  }
  detail::require(rows.size() >= 3,
                  "extract_coupling_asymptotics: fewer than 3 nodes in the outer half");

  Eigen::MatrixXd a(rows.size(), 3);
  Eigen::VectorXd y(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double r = grid.r(rows[k]);
    a(k, 0) = 1.0;
    a(k, 1) = 1.0 / r;
    a(k, 2) = r;
    y(k) = phi[rows[k]];
    detail::require(std::isfinite(y(k)), "extract_coupling_asymptotics: phi must be finite");
  }
  const Eigen::VectorXd scale = a.colwise().norm().transpose();
  const Eigen::MatrixXd as = a * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(as, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  AsymptoticFit fit;
  fit.points = rows.size();
  fit.condition_number = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                 : std::numeric_limits<double>::infinity();
  if (!(fit.condition_number <= max_fit_condition)) {
    std::ostringstream msg;
    msg << "extract_coupling_asymptotics: ill-conditioned fit (condition number "
        << fit.condition_number << " over r in [" << grid.r(rows.front()) << ", "
        << grid.r_max() << "]); extend r_max";
    throw ConvergenceError(msg.str());
  }
  const Eigen::VectorXd c = svd.solve(y).cwiseQuotient(scale);
  fit.phi0 = c(0);
  fit.q = c(1);
  fit.b0 = c(2);
  fit.rms_residual = std::sqrt((a * c - y).squaredNorm() / static_cast<double>(rows.size()));
  return fit;
}

inline AsymptoticFit extract_coupling_asymptotics(const FieldState& field) {
  return extract_coupling_asymptotics(*field.grid, field.phi);
}

/// Solve for phi given the Laplacian right-hand side on the grid, a point
/// charge q (phi gains q/r) and phi(r_max).
inline FieldState solve_radial_poisson(std::span<const double> laplacian_rhs, GridPtr grid,
                                       double point_charge = 0.0, double boundary_value = 0.0,
                                       bool fit_asymptotics = true) {
  detail::require(grid != nullptr, "solve_radial_poisson: null grid");
  const std::size_t n = grid->size();
  detail::require(laplacian_rhs.size() == n, "solve_radial_poisson: source does not match grid");
  detail::require(std::isfinite(point_charge) && std::isfinite(boundary_value),
                  "solve_radial_poisson: point charge and boundary value must be finite");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    detail::require(std::isfinite(laplacian_rhs[i]), "solve_radial_poisson: source must be finite");
    g[i] = grid->r(i) * grid->r(i) * laplacian_rhs[i];
  }

  // Enclosed charge inside r_min from the power law g ~ r^gamma.
  double cap = 0.0;
  if (g[0] != 0.0) {
    const double gamma = origin_exponent(*grid, g).value_or(2.0);
    if (!(gamma > -1.0)) {
      std::ostringstream msg;
      msg << "solve_radial_poisson: source is not integrable at the origin (r^2 f ~ r^"
          << gamma << ")";
      throw DomainError(msg.str());
    }
    cap = g[0] * grid->r_min() / (gamma + 1.0);
  }

  FieldState field;
  field.grid = grid;
  field.rhs.assign(laplacian_rhs.begin(), laplacian_rhs.end());
  field.point_charge = point_charge;
  field.boundary_value = boundary_value;

  const auto enclosed = grid->cumulative_integral(g);
  std::vector<double> smooth_slope(n);
  field.dphi.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r2 = grid->r(i) * grid->r(i);
    smooth_slope[i] = (cap + enclosed[i]) / r2;
    field.dphi[i] = smooth_slope[i] - point_charge / r2;
  }
  // phi_smooth(r) = phi_smooth(r_max) - int_r^r_max phi_smooth'.
  const auto outward = grid->cumulative_integral(smooth_slope);
  const double smooth_boundary = boundary_value - point_charge / grid->r_max();
  field.phi.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    field.phi[i] = smooth_boundary - (outward.back() - outward[i]) + point_charge / grid->r(i);
  }
  if (fit_asymptotics) field.fit = extract_coupling_asymptotics(*grid, field.phi);
  return field;
}

}  // namespace logse::numerics
