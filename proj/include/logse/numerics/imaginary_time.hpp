#pragma once

// Ground states by imaginary-time relaxation.
//
// Each step solves, for u = r psi,
//
//   [1 + dt (D + V[psi] + J - mu)] u_new = (1 + dt J) u,
//
// with D = -d^2/dr^2, V[psi] = L^2/r^2 + V_ext - b(r) ln max(|psi|^2, floor)
// frozen at the current iterate, mu the current Rayleigh quotient, and
// J = max(0, -2 b(r)) damping the stiff part of the logarithmic term where the
// coupling is negative (near the origin when q > 0). The iterate is then
// renormalized to N. Any fixed point satisfies H psi = mu psi, independent of
// dt and J.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "logse/grid.hpp"
#include "logse/numerics/operators.hpp"
#include "logse/numerics/solver_options.hpp"
#include "logse/numerics/tridiagonal.hpp"
#include "logse/scales.hpp"
#include "logse/wavefunction.hpp"

namespace logse::numerics {

class Relaxer {
 public:
  Relaxer(const RadialGrid& grid, const SolverOptions& opts) : stencil_(grid), opts_(opts) {
    opts_.validate();
  }

  [[nodiscard]] const KineticStencil& stencil() const noexcept { return stencil_; }
  [[nodiscard]] const SolverOptions& options() const noexcept { return opts_; }

  /// Advance psi by one step in place (renormalized). Returns the relative
  /// change and the pre-normalization norm.
  std::pair<double, double> step(RadialWavefunction& psi, std::span<const double> coupling,
                                 std::span<const double> v_ext) const {
    const std::size_t m = stencil_.size();
    const double dt = opts_.dt;
    const auto v = effective_node_potential(psi, coupling, v_ext, opts_.log_floor);

    std::vector<Complex> u(m);
    for (std::size_t i = 0; i < m; ++i) u[i] = psi.r(i) * psi.values[i];
    const auto du = stencil_.apply<Complex>(u);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double w = stencil_.lumped_weight[i];
      num += w * std::real(std::conj(u[i]) * (du[i] + v[i] * u[i]));
      den += w * std::norm(u[i]);
    }
    const double mu = num / den;

    std::vector<double> lower(m), diag(m), upper(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double j = coupling.empty() ? 0.0 : std::max(0.0, -2.0 * coupling[i]);
      lower[i] = dt * stencil_.lower[i];
      upper[i] = dt * stencil_.upper[i];
      diag[i] = 1.0 + dt * (stencil_.diag[i] + v[i] + j - mu);
      u[i] *= 1.0 + dt * j;
    }
    TridiagonalLU<double>(lower, diag, upper).solve(std::span<Complex>(u));

    std::vector<Complex> old = psi.values;
    for (std::size_t i = 0; i < m; ++i) psi.values[i] = u[i] / psi.r(i);
    psi.values.back() = Complex(0.0);
    const double raw_norm = psi.norm();
    psi.normalize();

    double diff = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
      diff = std::max(diff, std::abs(psi.values[i] - old[i]));
      peak = std::max(peak, std::abs(psi.values[i]));
    }
    return {diff / peak, raw_norm};
  }

 private:
  KineticStencil stencil_;
  SolverOptions opts_;
};

struct GroundStateSetup {
  Measure measure = Measure::spherical;
  /// L^2 for the radial measure.
  double angular_sq = 0.0;
  std::optional<RadialWavefunction> initial;
};

struct GroundState {
  RadialWavefunction psi;
  double omega = 0.0;
  std::size_t steps = 0;
  /// max |H psi - omega psi| / max |psi| with the solver's own operator.
  double operator_residual = 0.0;
  std::vector<IterationRecord> history;
};

namespace internal {

inline RadialWavefunction initial_guess(const GridPtr& grid, double n,
                                        const GroundStateSetup& setup) {
  if (setup.initial) {
    logse::detail::require(setup.initial->size() == grid->size(),
                           "ground state: initial guess does not match the grid");
    RadialWavefunction psi(grid, setup.initial->values, n, setup.measure, setup.angular_sq);
    psi.values.back() = Complex(0.0);
    return psi.normalize();
  }
  auto psi = sample_wavefunction(
      grid, [](double r) { return std::exp(-0.5 * r * r); }, n, setup.measure,
      setup.angular_sq);
  psi.values.back() = Complex(0.0);
  return psi.normalize();
}

inline GroundState relax_to_ground_state(GridPtr grid, double n, std::span<const double> coupling,
                                         std::span<const double> v_ext,
                                         const SolverOptions& opts,
                                         const GroundStateSetup& setup) {
  logse::detail::require(std::isfinite(n) && n > 0.0, "ground state: N must be positive");
  logse::detail::require(setup.angular_sq >= 0.0, "ground state: L^2 must be >= 0");
  const Relaxer relaxer(*grid, opts);
  GroundState gs;
  gs.psi = initial_guess(grid, n, setup);
  for (std::size_t step = 1; step <= opts.max_steps; ++step) {
    const auto [change, raw_norm] = relaxer.step(gs.psi, coupling, v_ext);
    const auto h = apply_hamiltonian(gs.psi, relaxer.stencil(), coupling, v_ext, opts.log_floor);
    IterationRecord rec;
    rec.step = step;
    rec.change = change;
    rec.norm = raw_norm;
    rec.omega = rayleigh_quotient(gs.psi, h);
    rec.energy = energy_functional(gs.psi, relaxer.stencil(), coupling, v_ext);
    gs.history.push_back(rec);
    if (!std::isfinite(change)) break;
    if (change < opts.convergence_tol) {
      gs.steps = step;
      gs.omega = rec.omega;
      double worst = 0.0, peak = 0.0;
      for (std::size_t i = 0; i + 1 < gs.psi.size(); ++i) {
        worst = std::max(worst, std::abs(h[i] - gs.omega * gs.psi.values[i]));
        peak = std::max(peak, std::abs(gs.psi.values[i]));
      }
      gs.operator_residual = worst / peak;
      return gs;
    }
  }
  std::ostringstream msg;
  msg << "imaginary-time relaxation did not converge in " << opts.max_steps
      << " steps (last relative change " << gs.history.back().change << ", tolerance "
      << opts.convergence_tol << ")";
  throw SolverFailure(msg.str(), gs.psi, std::move(gs.history));
}

}  // namespace internal

/// Nonlinear ground state for the coupling b(r) = b0 - q/r^2.
///
/// Intended for q in {0, 1}, or grids whose r_min keeps q/r^2 moderate.
inline GroundState ground_state_imaginary_time(const CouplingProfile& profile, double n,
                                               GridPtr grid, const SolverOptions& opts = {},
                                               const GroundStateSetup& setup = {}) {
  const auto coupling = sample_coupling(profile, *grid);
  return internal::relax_to_ground_state(std::move(grid), n, coupling, {}, opts, setup);
}

/// Ground state of the linear equation -lap psi + V_ext psi = omega psi.
inline GroundState linear_ground_state(std::span<const double> v_ext, double n, GridPtr grid,
                                       const SolverOptions& opts = {},
                                       const GroundStateSetup& setup = {}) {
  logse::detail::require(v_ext.size() == grid->size(),
                         "linear_ground_state: V_ext must be sampled on the grid");
  for (double v : v_ext) {
    logse::detail::require(std::isfinite(v), "linear_ground_state: V_ext must be finite");
  }
  return internal::relax_to_ground_state(std::move(grid), n, {}, v_ext, opts, setup);
}

}  // namespace logse::numerics
