#pragma once

// Resolved configuration of one CLI run.
//
// Config files are flat `key = value` lines (`#` starts a comment); keys are
// the long option names. Command-line options override file values.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "logse/analytic.hpp"
#include "logse/grid.hpp"
#include "logse/numerics/solver_options.hpp"
#include "logse/wavefunction.hpp"

namespace logse::cli {

struct RunConfig {
  std::string command;

  std::string case_name = "constant";
  double n = 1.0;
  double b0 = std::numbers::pi;
  double q = 0.0;
  double l2 = 0.0;
  double sy = 0.0;
  std::string measure = "spherical";

  double r_min = 1e-3;
  std::optional<double> r_max;
  std::size_t points = 4001;
  std::string spacing = "uniform";
  double stretch = RadialGrid::default_stretch;

  std::optional<double> dt;
  std::optional<std::size_t> steps;
  double tol = 1e-10;
  double log_floor = numerics::default_log_floor;
  double mixing = 0.5;
  std::size_t stride = 100;

  std::string f_model = "constant-over-r";
  double epsilon = 0.01;
  double point_charge = 0.0;

  /// report: point count override for every grid-based criterion (0 = defaults).
  std::size_t grid_points = 0;

  std::string out_dir = ".";
  std::string prefix;
  bool json = false;

  [[nodiscard]] bool uses_radial_measure() const {
    return measure == "radial" ||
           (command != "groundstate" && command != "field" &&
            solution_case_from_string(case_name) == SolutionCase::inverse_square);
  }

  [[nodiscard]] double resolved_r_max() const {
    if (r_max) return *r_max;
    // exponential tail exp(-2 mu^2 r) down by e^-70 at the boundary
    if (uses_radial_measure()) return 35.0 * std::cbrt(4.0 * n) * std::exp(l2 / 3.0);
    return 12.0 * std::max(1.0, std::cbrt(n));
  }

  [[nodiscard]] double resolved_dt() const {
    if (dt) return *dt;
    return command == "evolve" ? 1e-4 : 0.05;
  }

  [[nodiscard]] std::size_t resolved_steps() const {
    if (steps) return *steps;
    return command == "evolve" ? 1000 : 200000;
  }

  [[nodiscard]] GridPtr grid() const {
    return make_grid(r_min, resolved_r_max(), points, grid_spacing_from_string(spacing), stretch);
  }

  [[nodiscard]] numerics::SolverOptions solver_options() const {
    numerics::SolverOptions o;
    o.dt = resolved_dt();
    o.max_steps = resolved_steps();
    o.convergence_tol = tol;
    o.log_floor = log_floor;
    o.mixing = mixing;
    o.snapshot_stride = stride;
    o.validate();
    return o;
  }

  [[nodiscard]] Measure resolved_measure() const {
    if (measure != "spherical" && measure != "radial") {
      throw DomainError("unknown measure '" + measure + "' (expected spherical or radial)");
    }
    return uses_radial_measure() ? Measure::radial : Measure::spherical;
  }

  /// Every setting with defaults resolved, as the config-file text that
  /// reproduces this run.
  [[nodiscard]] std::string to_key_value() const {
    std::ostringstream s;
    s << "# command: " << command << "\n";
    auto num = [&](const char* key, double v) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      s << key << "=" << buf << "\n";
    };
    auto str = [&](const char* key, const std::string& v) { s << key << "=\"" << v << "\"\n"; };
    str("case", case_name);
    num("N", n);
    num("b0", b0);
    num("q", q);
    num("L2", l2);
    num("SY", sy);
    str("measure", std::string(to_string(resolved_measure())));
    num("r-min", r_min);
    num("r-max", resolved_r_max());
    s << "points=" << points << "\n";
    str("spacing", spacing);
    num("stretch", stretch);
    num("dt", resolved_dt());
    s << "steps=" << resolved_steps() << "\n";
    num("tol", tol);
    num("log-floor", log_floor);
    num("mixing", mixing);
    s << "stride=" << stride << "\n";
    str("f-model", f_model);
    num("epsilon", epsilon);
    num("point-charge", point_charge);
    s << "grid-points=" << grid_points << "\n";
    return s.str();
  }

  [[nodiscard]] nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["case"] = case_name;
    j["N"] = n;
    j["b0"] = b0;
    j["q"] = q;
    j["L2"] = l2;
    j["SY"] = sy;
    j["measure"] = std::string(to_string(resolved_measure()));
    j["r_min"] = r_min;
    j["r_max"] = resolved_r_max();
    j["points"] = points;
    j["spacing"] = spacing;
    j["stretch"] = stretch;
    j["dt"] = resolved_dt();
    j["steps"] = resolved_steps();
    j["tol"] = tol;
    j["log_floor"] = log_floor;
    j["mixing"] = mixing;
    j["stride"] = stride;
    j["f_model"] = f_model;
    j["epsilon"] = epsilon;
    j["point_charge"] = point_charge;
    j["grid_points"] = grid_points;
    return j;
  }
};

}  // namespace logse::cli
