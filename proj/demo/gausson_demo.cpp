// Relax the q = 0 ground state from a wrong-width Gaussian and compare with
// the closed form, then propagate it briefly in real time.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "logse/logse.hpp"

int main() {
  using namespace logse;
  const double b0 = std::numbers::pi;
  const auto exact = case_constant(1.0, b0);
  auto grid = make_grid(1e-3, 12.0, 2001);

  numerics::GroundStateSetup setup;
  setup.initial = sample_wavefunction(grid, [](double r) { return std::exp(-0.2 * r * r); }, 1.0);
  const auto gs = numerics::ground_state_imaginary_time(exact.profile, 1.0, grid, {}, setup);
  std::printf("relaxed in %zu steps\n", gs.steps);
  std::printf("omega  %.8f  (closed form %.8f)\n", gs.omega, exact.omega);
  std::printf("L2 distance to closed form %.2e\n", relative_l2_error(gs.psi, exact.sample(grid)));
  std::printf("entropy %.8f  (closed form %.8f)\n", entropy(gs.psi), exact.entropy_closed_form());

  numerics::SolverOptions rt;
  rt.dt = 1e-4;
  rt.max_steps = 2000;
  rt.snapshot_stride = 500;
  const auto traj = numerics::evolve_real_time(exact.sample(grid), exact.profile, rt);
  std::printf("\n%8s %14s %14s\n", "t", "norm", "phase");
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::printf("%8.3f %14.10f %14.8f\n", traj.times[i], traj.norms[i], traj.phases[i]);
  }
  std::printf("phase frequency %.6f, density deviation %.1e\n", numerics::phase_frequency(traj),
              traj.max_density_deviation);
}
