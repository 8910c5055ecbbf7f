#pragma once

// Self-consistent coupled model: an auxiliary field obeying
//
//   lap phi = 4 pi f(r, |psi|^2)     (+ point charge q/r)
//
// whose radial gradient is the coupling of the logarithmic wave equation,
// b(r) = d phi / dr. Damped fixed-point iteration; each sweep solves the
// Poisson problem, takes one relaxation step of psi in the resulting coupling
// and mixes the result into the previous iterate.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "logse/errors.hpp"
#include "logse/grid.hpp"
#include "logse/numerics/imaginary_time.hpp"
#include "logse/numerics/poisson.hpp"
#include "logse/numerics/solver_options.hpp"
#include "logse/wavefunction.hpp"

namespace logse::numerics {

/// Source f(r, rho) of the auxiliary field.
using SourceModel = std::function<double(double r, double rho)>;

namespace sources {

/// f = b0 / (2 pi r): gives d phi / dr = b0 exactly.
inline SourceModel constant_over_r(double b0) {
  return [b0](double r, double) { return b0 / (2.0 * std::numbers::pi * r); };
}

inline SourceModel zero() {
  return [](double, double) { return 0.0; };
}

/// f = eps * rho.
inline SourceModel linear(double eps) {
  return [eps](double, double rho) { return eps * rho; };
}

}  // namespace sources

struct MinimalModelSetup {
  double point_charge = 0.0;
  std::optional<RadialWavefunction> initial;
};

struct MinimalModelResult {
  RadialWavefunction psi;
  FieldState field;
  /// Rayleigh quotient in the final coupling.
  double omega = 0.0;
  std::size_t sweeps = 0;
  std::vector<IterationRecord> history;
};

/// Sweeps per window of the oscillation check.
inline constexpr std::size_t oscillation_window = 50;

inline MinimalModelResult self_consistent_minimal_model(const SourceModel& f, double n,
                                                        GridPtr grid,
                                                        const SolverOptions& opts = {},
                                                        const MinimalModelSetup& setup = {}) {
  opts.validate();
  detail::require(static_cast<bool>(f), "minimal model: empty source model");
  detail::require(std::isfinite(n) && n > 0.0, "minimal model: N must be positive");
  const std::size_t size = grid->size();

  GroundStateSetup gs_setup;
  gs_setup.initial = setup.initial;
  RadialWavefunction psi = internal::initial_guess(grid, n, gs_setup);
  const Relaxer relaxer(*grid, opts);

  auto field_for = [&](const RadialWavefunction& p) {
    std::vector<double> rhs(size);
    for (std::size_t i = 0; i < size; ++i) {
      rhs[i] = 4.0 * std::numbers::pi * f(grid->r(i), std::norm(p.values[i]));
    }
    return solve_radial_poisson(rhs, grid, setup.point_charge, 0.0, false);
  };

  MinimalModelResult res;
  FieldState field = field_for(psi);
  double window_best = std::numeric_limits<double>::infinity();
  double previous_window_best = std::numeric_limits<double>::infinity();

  for (std::size_t sweep = 1; sweep <= opts.max_steps; ++sweep) {
    RadialWavefunction trial = psi;
    const auto [step_change, raw_norm] = relaxer.step(trial, field.dphi, {});
    (void)step_change;
    double psi_diff = 0.0, psi_peak = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      const Complex mixed = (1.0 - opts.mixing) * psi.values[i] + opts.mixing * trial.values[i];
      psi_diff = std::max(psi_diff, std::abs(mixed - psi.values[i]));
      psi.values[i] = mixed;
    }
    psi.normalize();
    for (const auto& v : psi.values) psi_peak = std::max(psi_peak, std::abs(v));

    FieldState next = field_for(psi);
    double field_diff = 0.0, field_peak = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      field_diff = std::max(field_diff, std::abs(next.dphi[i] - field.dphi[i]));
      field_peak = std::max(field_peak, std::abs(next.dphi[i]));
    }
    field = std::move(next);

    const double change =
        std::max(psi_diff / psi_peak, field_peak > 0.0 ? field_diff / field_peak : field_diff);
    const KineticStencil& stencil = relaxer.stencil();
    const auto h = apply_hamiltonian(psi, stencil, field.dphi, {}, opts.log_floor);
    IterationRecord rec;
    rec.step = sweep;
    rec.change = change;
    rec.norm = raw_norm;
    rec.omega = rayleigh_quotient(psi, h);
    rec.energy = energy_functional(psi, stencil, field.dphi, {});
    res.history.push_back(rec);

    if (!std::isfinite(change)) break;
    if (change < opts.convergence_tol) {
      res.psi = std::move(psi);
      field.fit = extract_coupling_asymptotics(*grid, field.phi);
      res.field = std::move(field);
      res.omega = rec.omega;
      res.sweeps = sweep;
      return res;
    }

    window_best = std::min(window_best, change);
    if (sweep % oscillation_window == 0) {
      if (sweep >= 2 * oscillation_window && !(window_best < previous_window_best)) {
        std::ostringstream msg;
        msg << "minimal model: iteration is not contracting (best change " << window_best
            << " over sweeps " << sweep - oscillation_window + 1 << ".." << sweep
            << ", previous window " << previous_window_best
            << "); reduce the mixing factor (currently " << opts.mixing << ")";
        throw SolverFailure(msg.str(), psi, std::move(res.history));
      }
      previous_window_best = window_best;
      window_best = std::numeric_limits<double>::infinity();
    }
  }
  std::ostringstream msg;
  msg << "minimal model did not converge in " << opts.max_steps << " sweeps (last change "
      << (res.history.empty() ? 0.0 : res.history.back().change) << ", tolerance "
      << opts.convergence_tol << ")";
  throw SolverFailure(msg.str(), psi, std::move(res.history));
}

}  // namespace logse::numerics
