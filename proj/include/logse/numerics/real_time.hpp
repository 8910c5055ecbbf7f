#pragma once

// Real-time propagation of
//
//   i d_t psi = -lap psi - b(r) ln|psi|^2 psi
//
// by Strang splitting: half a nonlinear phase step, a Crank-Nicolson kinetic
// step on u = r psi, and another half phase step. The phase step leaves
// |psi| untouched and the kinetic step conserves sum_i m_i |u_i|^2 exactly.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "logse/grid.hpp"
#include "logse/numerics/operators.hpp"
#include "logse/numerics/solver_options.hpp"
#include "logse/numerics/tridiagonal.hpp"
#include "logse/scales.hpp"
#include "logse/wavefunction.hpp"

namespace logse::numerics {

/// Allowed relative norm drift per 1000 steps before propagation aborts.
inline constexpr double max_norm_drift_per_kilostep = 1e-6;

struct Trajectory {
  std::vector<double> times;
  std::vector<RadialWavefunction> snapshots;
  /// Quadrature norm at each snapshot.
  std::vector<double> norms;
  /// -arg <psi0|psi(t)>, unwrapped, at each snapshot.
  std::vector<double> phases;
  /// max over all steps of |N(t) - N(0)| / N(0).
  double max_norm_drift = 0.0;
  /// max over all steps of max_r ||psi(t)|^2 - |psi0|^2| / max_r |psi0|^2.
  double max_density_deviation = 0.0;
  std::size_t steps = 0;
};

/// <a|b> in the measure of a.
inline Complex overlap(const RadialWavefunction& a, const RadialWavefunction& b) {
  detail::require(a.size() == b.size(), "overlap: size mismatch");
  const std::size_t n = a.size();
  std::vector<double> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r2 = a.r(i) * a.r(i);
    const Complex z = std::conj(a.values[i]) * b.values[i];
    re[i] = r2 * z.real();
    im[i] = r2 * z.imag();
  }
  // The origin cap assumes a sign-definite integrand; the grid sum alone is
  // enough for a phase.
  const auto& grid = *a.grid;
  return a.prefactor() * Complex(grid.integrate(re), grid.integrate(im));
}

/// Frequency implied by a phase history: slope of phase against time.
inline double phase_frequency(const Trajectory& traj) {
  detail::require(traj.times.size() >= 2 && traj.times.back() > traj.times.front(),
                  "phase_frequency: need at least two snapshots at distinct times");
  return (traj.phases.back() - traj.phases.front()) / (traj.times.back() - traj.times.front());
}

/// Propagate psi0 for opts.max_steps steps of size opts.dt, keeping every
/// opts.snapshot_stride-th state (plus the initial and final ones).
inline Trajectory evolve_real_time(const RadialWavefunction& psi0, const CouplingProfile& profile,
                                   const SolverOptions& opts = {}) {
  opts.validate();
  detail::require(psi0.grid != nullptr, "evolve_real_time: psi0 has no grid");
  detail::require(psi0.is_normalized(1e-6),
                  "evolve_real_time: psi0 is not normalized to its target norm");
  const auto& grid = *psi0.grid;
  const std::size_t n = psi0.size();
  const KineticStencil stencil(grid);
  const std::size_t m = stencil.size();
  const double dt = opts.dt;
  const auto coupling = sample_coupling(profile, grid);
  const bool radial = psi0.measure == Measure::radial;
  // The split nonlinear phase dt * b ln|psi|^2 is accurate only while dt |b| is small;
  // b ~ -q / r^2 makes this the binding limit near r_min.
  double max_abs_coupling = 0.0;
  for (double b : coupling) max_abs_coupling = std::max(max_abs_coupling, std::abs(b));

  // (1 + i dt/2 A) u_new = (1 - i dt/2 A) u with A = D + L^2/r^2.
  const Complex half(0.0, 0.5 * dt);
  std::vector<Complex> lo(m), di(m), up(m);
  std::vector<double> a_diag(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = grid.r(i);
    a_diag[i] = stencil.diag[i] + (radial ? psi0.angular_sq / (r * r) : 0.0);
    lo[i] = half * stencil.lower[i];
    up[i] = half * stencil.upper[i];
    di[i] = 1.0 + half * a_diag[i];
  }
  const TridiagonalLU<Complex> lhs(lo, di, up);

  RadialWavefunction psi = psi0;
  psi.values.back() = Complex(0.0);
  const double n0 = psi.norm();
  const auto rho0 = psi0.density();
  const double rho0_peak = *std::max_element(rho0.begin(), rho0.end());

  Trajectory traj;
  auto record = [&](double t, double phase) {
    traj.times.push_back(t);
    traj.snapshots.push_back(psi);
    traj.norms.push_back(psi.norm());
    traj.phases.push_back(phase);
  };

  auto nonlinear_half_step = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      const double ln_rho = floored_log(std::norm(psi.values[i]), opts.log_floor);
      const double theta = 0.5 * dt * coupling[i] * ln_rho;
      psi.values[i] *= Complex(std::cos(theta), std::sin(theta));
    }
  };

  double phase = 0.0;
  double prev_arg = 0.0;
  record(0.0, 0.0);
  double checkpoint_norm = n0;
  std::size_t checkpoint_step = 0;
  std::vector<Complex> u(m), rhs(m);

  for (std::size_t step = 1; step <= opts.max_steps; ++step) {
    nonlinear_half_step();
    for (std::size_t i = 0; i < m; ++i) u[i] = grid.r(i) * psi.values[i];
    for (std::size_t i = 0; i < m; ++i) {
      Complex au = a_diag[i] * u[i];
      if (i > 0) au += stencil.lower[i] * u[i - 1];
      if (i + 1 < m) au += stencil.upper[i] * u[i + 1];
      rhs[i] = u[i] - half * au;
    }
    lhs.solve(std::span<Complex>(rhs));
    for (std::size_t i = 0; i < m; ++i) psi.values[i] = rhs[i] / grid.r(i);
    psi.values.back() = Complex(0.0);
    nonlinear_half_step();

    const double t = static_cast<double>(step) * dt;
    const double arg = std::arg(overlap(psi0, psi));
    double jump = arg - prev_arg;
    jump -= 2.0 * std::numbers::pi * std::round(jump / (2.0 * std::numbers::pi));
    phase -= jump;
    prev_arg = arg;

    const double nt = psi.norm();
    const double drift = std::abs(nt - n0) / n0;
    traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) dev = std::max(dev, std::abs(std::norm(psi.values[i]) - rho0[i]));
    traj.max_density_deviation = std::max(traj.max_density_deviation, dev / rho0_peak);

    if (!std::isfinite(nt)) {
      throw SolverFailure("real-time propagation produced a non-finite state at step " +
                              std::to_string(step),
                          psi, {});
    }
    if (step % 1000 == 0 || step == opts.max_steps) {
      const double window = static_cast<double>(step - checkpoint_step) / 1000.0;
      const double window_drift = std::abs(nt - checkpoint_norm) / n0;
      if (window_drift > max_norm_drift_per_kilostep * std::max(window, 1.0)) {
        std::ostringstream msg;
        msg.precision(6);
        msg << "real-time propagation: norm drift " << window_drift << " over steps "
            << checkpoint_step << ".." << step << " exceeds "
            << max_norm_drift_per_kilostep << " per 1000 steps (norm " << nt << ", initial "
            << n0 << "); dt * max|b| = " << dt * max_abs_coupling
            << " (keep it below ~1), or refine the grid / enlarge r_max";
        throw SolverFailure(msg.str(), psi, {});
      }
      checkpoint_norm = nt;
      checkpoint_step = step;
    }
    if (step % opts.snapshot_stride == 0 || step == opts.max_steps) record(t, phase);
  }
  traj.steps = opts.max_steps;
  return traj;
}

}  // namespace logse::numerics
