// Command-line front end: analytic | groundstate | evolve | field | report.
//
// Exit codes: 0 success, 2 precondition violation, 3 solver non-convergence,
// 4 acceptance failure.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

void bind_options(CLI::App& app, logse::cli::RunConfig& c) {
  app.add_option("--case", c.case_name, "analytic case: general, q1, constant, inverse_square")
      ->capture_default_str();
  app.add_option("--N", c.n, "norm N")->capture_default_str();
  app.add_option("--b0", c.b0, "coupling constant b0")->capture_default_str();
  app.add_option("--q", c.q, "field charge q")->capture_default_str();
  app.add_option("--L2", c.l2, "separation constant L^2")->capture_default_str();
  app.add_option("--SY", c.sy, "angular entropy S_Y")->capture_default_str();
  app.add_option("--measure", c.measure, "groundstate normalization: spherical or radial")
      ->capture_default_str();

  app.add_option("--r-min", c.r_min, "first grid node")->capture_default_str();
  app.add_option("--r-max", c.r_max, "last grid node (default depends on the case)");
  app.add_option("--points", c.points, "grid points")->capture_default_str();
  app.add_option("--spacing", c.spacing, "uniform, log or stretched")->capture_default_str();
  app.add_option("--stretch", c.stretch, "stretching exponent of the stretched grid")
      ->capture_default_str();

  app.add_option("--dt", c.dt, "time step (default 0.05 relaxation, 1e-4 propagation)");
  app.add_option("--steps", c.steps, "step cap (relaxation) or step count (propagation)");
  app.add_option("--tol", c.tol, "convergence tolerance")->capture_default_str();
  app.add_option("--log-floor", c.log_floor, "density floor inside the logarithm")
      ->capture_default_str();
  app.add_option("--mixing", c.mixing, "self-consistent mixing factor")->capture_default_str();
  app.add_option("--stride", c.stride, "keep every k-th real-time snapshot")->capture_default_str();

  app.add_option("--f-model", c.f_model, "field source: constant-over-r, zero or linear")
      ->capture_default_str();
  app.add_option("--epsilon", c.epsilon, "slope of the linear source model")->capture_default_str();
  app.add_option("--point-charge", c.point_charge, "point charge at the origin")
      ->capture_default_str();

  app.add_option("--grid-points", c.grid_points, "report: grid size for every criterion")
      ->capture_default_str();
  app.add_option("--out-dir", c.out_dir, "output directory")->capture_default_str();
  app.add_option("--prefix", c.prefix, "output file name prefix");
  app.add_flag("--json", c.json, "report: print JSON instead of the table");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace logse::cli;
  CLI::App app{"Logarithmic wave equation with variable coupling b(r) = b0 - q/r^2"};
  app.option_defaults()->take_last();
  app.set_config("--config", "", "key=value file; command-line options override it");
  RunConfig cfg;
  bind_options(app, cfg);
  app.require_subcommand(1, 1);
  for (const char* name : {"analytic", "groundstate", "evolve", "field", "report"}) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->callback([&cfg, name] { cfg.command = name; });
  }
  app.get_subcommand("analytic")->description("closed-form solution with derived profiles");
  app.get_subcommand("groundstate")->description("imaginary-time ground state");
  app.get_subcommand("evolve")->description("real-time propagation of an analytic state");
  app.get_subcommand("field")->description("self-consistent field + wavefunction model");
  app.get_subcommand("report")->description("acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::precondition;
  }

  try {
    const auto out = run_command(cfg);
    if (out.text) {
      std::cout << *out.text;
    } else {
      std::cout << out.json.dump(2) << "\n";
    }
    return out.exit_code;
  } catch (const logse::DomainError& e) {
    std::cerr << "error: precondition violated: " << e.what() << "\n";
    return exit_code::precondition;
  } catch (const logse::ConvergenceError& e) {
    std::cerr << "error: no convergence: " << e.what() << "\n";
    return exit_code::no_convergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::precondition;
  }
}
