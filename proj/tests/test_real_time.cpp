#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "logse/analytic.hpp"
#include "logse/numerics/real_time.hpp"

using namespace logse;
using namespace logse::numerics;
using std::numbers::pi;

namespace {

SolverOptions steps(std::size_t n, double dt = 1e-4) {
  SolverOptions o;
  o.dt = dt;
  o.max_steps = n;
  return o;
}

}  // namespace

TEST(RealTime, GaussonIsStationary) {
  const auto s = case_constant(1, pi);
  auto g = make_grid(1e-3, 10.0, 4001);
  const auto traj = evolve_real_time(s.sample(g), s.profile, steps(1000));
  EXPECT_LT(traj.max_norm_drift, 1e-8);
  EXPECT_LT(traj.max_density_deviation, 1e-4);
  EXPECT_NEAR(phase_frequency(traj), 3 * pi, 1e-3 * 3 * pi);
  EXPECT_EQ(traj.steps, 1000u);
  EXPECT_DOUBLE_EQ(traj.times.back(), 0.1);
  EXPECT_EQ(traj.snapshots.size(), 11u);
}

// b ~ -q / r^2 makes the split nonlinear phase stiff near the origin; the
// step has to keep dt * max|b| below ~1.
TEST(RealTime, GeneralCaseIsStationary) {
  const auto s = case_general(1, 2);
  auto g = make_grid(1e-2, 12.0, 4001);
  const auto traj = evolve_real_time(s.sample(g).normalize(), s.profile, steps(10000, 1e-5));
  EXPECT_DOUBLE_EQ(traj.times.back(), 0.1);
  EXPECT_LT(traj.max_density_deviation, 1e-4);
  EXPECT_LT(traj.max_norm_drift, 1e-8);
  EXPECT_NEAR(phase_frequency(traj), pi, 1e-3 * pi);
}

TEST(RealTime, InverseSquareIsStationary) {
  const auto s = case_inverse_square(1);
  auto g = make_grid(1e-2, 40.0, 4001, GridSpacing::stretched, 3.0);
  const auto traj = evolve_real_time(s.sample(g).normalize(), s.profile, steps(10000, 1e-5));
  EXPECT_LT(traj.max_norm_drift, 1e-8);
  EXPECT_LT(traj.max_density_deviation, 1e-3);
}

TEST(RealTime, FreeSpreadingConservesNorm) {
  // The lumped norm is conserved exactly; the quadrature norm also sees the
  // unresolved cell [0, r_min], so r_min is taken tiny here.
  auto g = make_grid(1e-6, 30.0, 4001);
  const auto psi0 =
      sample_wavefunction(g, [](double r) { return std::exp(-r * r); }, 1.0).normalize();
  const auto traj = evolve_real_time(psi0, {0, 0}, steps(1000, 1e-4));
  EXPECT_LT(traj.max_norm_drift, 1e-10);
  // the packet spreads: the central density drops
  EXPECT_LT(traj.snapshots.back().density()[0], 0.95 * psi0.density()[0]);
}

TEST(RealTime, FreeSpreadingMatchesExactWidth) {
  // |psi(0, t)|^2 / |psi(0, 0)|^2 = (1 + 16 t^2)^(-3/2) for exp(-r^2) with H = -lap
  auto g = make_grid(1e-3, 30.0, 6001);
  const auto psi0 =
      sample_wavefunction(g, [](double r) { return std::exp(-r * r); }, 1.0).normalize();
  const auto traj = evolve_real_time(psi0, {0, 0}, steps(500, 1e-4));
  const double t = traj.times.back();
  EXPECT_NEAR(traj.snapshots.back().density()[0] / psi0.density()[0],
              std::pow(1 + 16 * t * t, -1.5), 1e-4);
}

TEST(RealTime, RejectsUnnormalizedInput) {
  const auto s = case_constant(1, pi);
  auto psi = s.sample(make_grid(1e-3, 10.0, 401));
  for (auto& v : psi.values) v *= 1.01;
  EXPECT_THROW(evolve_real_time(psi, s.profile, steps(10)), DomainError);
}

TEST(RealTime, SnapshotStride) {
  const auto s = case_constant(1, pi);
  auto o = steps(250);
  o.snapshot_stride = 100;
  const auto traj = evolve_real_time(s.sample(make_grid(1e-3, 10.0, 801)), s.profile, o);
  ASSERT_EQ(traj.times.size(), 4u);  // 0, 100, 200, 250
  EXPECT_DOUBLE_EQ(traj.times[3], 250 * 1e-4);
}
