#pragma once

// Discrete operators shared by the stationary residual and the solvers.
//
// The solvers work with u = r psi, for which the radial Laplacian becomes
// u'' / r. Boundary conditions: u = 0 at the origin (a ghost node at r = 0,
// one spacing r_min to the left of the first grid node) and u(r_max) = 0.
// The unknowns are the nodes 0 .. n-2.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "logse/errors.hpp"
#include "logse/grid.hpp"
#include "logse/scales.hpp"
#include "logse/wavefunction.hpp"

namespace logse::numerics {

inline constexpr double default_log_floor = 1e-30;

/// Three-point stencil of D = -d^2/dr^2 acting on u over the unknown nodes.
///
/// m_i D is symmetric for the lumped weights m_i = (h_minus + h_plus) / 2,
/// so Crank-Nicolson with this stencil conserves sum_i m_i |u_i|^2 exactly.
struct KineticStencil {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;
  std::vector<double> lumped_weight;

  explicit KineticStencil(const RadialGrid& grid) {
    const std::size_t m = grid.size() - 1;
    lower.resize(m);
    diag.resize(m);
    upper.resize(m);
    lumped_weight.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double hm = (i == 0) ? grid.r(0) : grid.r(i) - grid.r(i - 1);
      const double hp = grid.r(i + 1) - grid.r(i);
      const double c = 2.0 / (hm + hp);
      lower[i] = (i == 0) ? 0.0 : -c / hm;
      upper[i] = (i + 1 < m) ? -c / hp : 0.0;
      diag[i] = c / hm + c / hp;
      lumped_weight[i] = 0.5 * (hm + hp);
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return diag.size(); }

  template <class T>
  [[nodiscard]] std::vector<T> apply(std::span<const T> u) const {
    const std::size_t m = size();
    std::vector<T> out(m);
    for (std::size_t i = 0; i < m; ++i) {
      T v = diag[i] * u[i];
      if (i > 0) v += lower[i] * u[i - 1];
      if (i + 1 < m) v += upper[i] * u[i + 1];
      out[i] = v;
    }
    return out;
  }
};

/// ln(max(rho, floor)).
inline double floored_log(double rho, double floor) { return std::log(std::max(rho, floor)); }

/// Coupling b(r_i) sampled on the grid.
inline std::vector<double> sample_coupling(const CouplingProfile& profile, const RadialGrid& grid) {
  std::vector<double> b(grid.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = profile.evaluate(grid.r(i));
  return b;
}

/// Radial Laplacian psi'' + (2/r) psi' by second-order central differences on
/// interior nodes. The two boundary entries are left at zero.
template <class T>
std::vector<T> radial_laplacian(const RadialGrid& grid, std::span<const T> f) {
  const std::size_t n = grid.size();
  detail::require(f.size() == n, "radial_laplacian: size mismatch");
  std::vector<T> lap(n, T(0));
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = grid.r(i) - grid.r(i - 1);
    const double hp = grid.r(i + 1) - grid.r(i);
    const double den = hm * hp * (hm + hp);
    const T d2 = 2.0 * (hm * f[i + 1] - (hm + hp) * f[i] + hp * f[i - 1]) / den;
    const T d1 = (hm * hm * f[i + 1] - (hm * hm - hp * hp) * f[i] - hp * hp * f[i - 1]) / den;
    lap[i] = d2 + (2.0 / grid.r(i)) * d1;
  }
  return lap;
}

struct ResidualReport {
  /// max |residual| / max |psi| over interior nodes.
  double max_norm = 0.0;
  std::vector<double> pointwise;
};

/// Residual of lap(psi) + b(r) ln|psi|^2 psi + omega psi (minus L^2/r^2 psi for
/// the radial measure) on interior nodes.
inline ResidualReport residual_report(const RadialWavefunction& psi, double omega,
                                      const CouplingProfile& profile,
                                      double log_floor = default_log_floor) {
  const auto& grid = *psi.grid;
  const std::size_t n = psi.size();
  detail::require(n >= 18, "residual: grid too coarse (fewer than 16 interior points)");
  const auto lap = radial_laplacian<Complex>(grid, psi.values);
  ResidualReport rep;
  rep.pointwise.assign(n, 0.0);
  double peak = 0.0;
  for (const auto& v : psi.values) peak = std::max(peak, std::abs(v));
  detail::require(peak > 0.0, "residual: wavefunction vanishes identically");
  const bool radial = psi.measure == Measure::radial;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double r = grid.r(i);
    const Complex p = psi.values[i];
    Complex res = lap[i] + profile.evaluate(r) * floored_log(std::norm(p), log_floor) * p +
                  omega * p;
    if (radial) res -= psi.angular_sq / (r * r) * p;
    rep.pointwise[i] = std::abs(res);
    worst = std::max(worst, rep.pointwise[i]);
  }
  rep.max_norm = worst / peak;
  return rep;
}

inline double residual(const RadialWavefunction& psi, double omega, const CouplingProfile& profile,
                       double log_floor = default_log_floor) {
  return residual_report(psi, omega, profile, log_floor).max_norm;
}

/// Node-wise potential seen by psi in the u-formulation:
/// L^2/r^2 (radial measure) + V_ext - b(r) ln max(|psi|^2, floor).
inline std::vector<double> effective_node_potential(const RadialWavefunction& psi,
                                                    std::span<const double> coupling,
                                                    std::span<const double> v_ext,
                                                    double log_floor) {
  const std::size_t n = psi.size();
  std::vector<double> v(n, 0.0);
  const bool radial = psi.measure == Measure::radial;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = psi.r(i);
    double vi = radial ? psi.angular_sq / (r * r) : 0.0;
    if (!v_ext.empty()) vi += v_ext[i];
    if (!coupling.empty()) vi -= coupling[i] * floored_log(std::norm(psi.values[i]), log_floor);
    v[i] = vi;
  }
  return v;
}

/// H psi with H = -lap + V, evaluated through u = r psi. The last node
/// (Dirichlet boundary) is returned as zero.
inline std::vector<Complex> apply_hamiltonian(const RadialWavefunction& psi,
                                              const KineticStencil& stencil,
                                              std::span<const double> coupling,
                                              std::span<const double> v_ext,
                                              double log_floor = default_log_floor) {
  const std::size_t n = psi.size();
  const std::size_t m = stencil.size();
  std::vector<Complex> u(m);
  for (std::size_t i = 0; i < m; ++i) u[i] = psi.r(i) * psi.values[i];
  const auto du = stencil.apply<Complex>(u);
  const auto v = effective_node_potential(psi, coupling, v_ext, log_floor);
  std::vector<Complex> h(n, Complex(0.0));
  for (std::size_t i = 0; i < m; ++i) h[i] = du[i] / psi.r(i) + v[i] * psi.values[i];
  return h;
}

/// Density-weighted mean of the local eigenvalue (H psi)/psi, i.e. the
/// Rayleigh quotient <psi|H|psi> / <psi|psi>.
inline double rayleigh_quotient(const RadialWavefunction& psi, std::span<const Complex> h_psi) {
  const auto& grid = *psi.grid;
  std::vector<double> num(psi.size()), den(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double r2 = psi.r(i) * psi.r(i);
    num[i] = r2 * std::real(std::conj(psi.values[i]) * h_psi[i]);
    den[i] = r2 * std::norm(psi.values[i]);
  }
  return radial_integral(grid, num) / radial_integral(grid, den);
}

/// Pointwise local eigenvalue Re[(H psi)/psi]; zero where psi vanishes.
inline std::vector<double> local_eigenvalue(const RadialWavefunction& psi,
                                            std::span<const Complex> h_psi) {
  std::vector<double> out(psi.size(), 0.0);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (psi.values[i] != Complex(0.0)) out[i] = std::real(h_psi[i] / psi.values[i]);
  }
  return out;
}

/// Discrete energy functional
///
///   E = pre * [ sum_j |u_{j+1} - u_j|^2 / h_j
///               + sum_i m_i r_i^2 (V_lin,i rho_i - b_i (rho_i ln rho_i - rho_i)) ],
///
/// pre = 4 pi or 1 by measure, V_lin = V_ext + L^2/r^2. Its gradient with
/// respect to psi_i is 2 pre m_i r_i^2 (H psi)_i with the same stencil as the
/// solvers, so imaginary-time relaxation descends it.
inline double energy_functional(const RadialWavefunction& psi, const KineticStencil& stencil,
                                std::span<const double> coupling, std::span<const double> v_ext) {
  const std::size_t m = stencil.size();
  const bool radial = psi.measure == Measure::radial;
  double kinetic = 0.0;
  Complex prev(0.0);
  double r_prev = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    const Complex ui = psi.r(i) * psi.values[i];
    const Complex ucur = (i == m) ? Complex(0.0) : ui;
    kinetic += std::norm(ucur - prev) / (psi.r(i) - r_prev);
    prev = ucur;
    r_prev = psi.r(i);
  }
  double potential = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = psi.r(i);
    const double rho = std::norm(psi.values[i]);
    double vlin = radial ? psi.angular_sq / (r * r) : 0.0;
    if (!v_ext.empty()) vlin += v_ext[i];
    double e = vlin * rho;
    if (!coupling.empty() && rho > 0.0) e -= coupling[i] * (rho * std::log(rho) - rho);
    potential += stencil.lumped_weight[i] * r * r * e;
  }
  return psi.prefactor() * (kinetic + potential);
}

}  // namespace logse::numerics
