#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "logse/errors.hpp"
#include "logse/numerics/operators.hpp"
#include "logse/wavefunction.hpp"

namespace logse::numerics {

struct SolverOptions {
  /// Imaginary-time step for relaxation, real-time step for propagation.
  double dt = 0.05;
  /// Iteration cap for relaxation; exact step count for propagation.
  std::size_t max_steps = 200000;
  double convergence_tol = 1e-10;
  double log_floor = default_log_floor;
  /// Linear mixing factor for the self-consistent field iteration.
  double mixing = 0.5;
  /// Keep every k-th real-time snapshot.
  std::size_t snapshot_stride = 100;

  void validate() const {
    detail::require(std::isfinite(dt) && dt > 0.0, "SolverOptions: dt must be > 0");
    detail::require(max_steps > 0, "SolverOptions: max_steps must be > 0");
    detail::require(std::isfinite(convergence_tol) && convergence_tol > 0.0,
                    "SolverOptions: convergence_tol must be > 0");
    detail::require(std::isfinite(log_floor) && log_floor > 0.0,
                    "SolverOptions: log_floor must be > 0");
    detail::require(std::isfinite(mixing) && mixing > 0.0 && mixing <= 1.0,
                    "SolverOptions: mixing must lie in (0, 1]");
    detail::require(snapshot_stride > 0, "SolverOptions: snapshot_stride must be > 0");
  }
};

struct IterationRecord {
  std::size_t step = 0;
  /// max |psi_new - psi_old| / max |psi_new|
  double change = 0.0;
  double norm = 0.0;
  double omega = 0.0;
  double energy = 0.0;
};

/// Non-convergence of an iterative solver; carries the last iterate.
class SolverFailure : public ConvergenceError {
 public:
  SolverFailure(const std::string& what, RadialWavefunction last,
                std::vector<IterationRecord> history)
      : ConvergenceError(what), last_(std::move(last)), history_(std::move(history)) {}

  [[nodiscard]] const RadialWavefunction& last_iterate() const noexcept { return last_; }
  [[nodiscard]] const std::vector<IterationRecord>& history() const noexcept { return history_; }

 private:
  RadialWavefunction last_;
  std::vector<IterationRecord> history_;
};

}  // namespace logse::numerics
