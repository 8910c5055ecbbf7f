#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "commands.hpp"

using namespace logse;
using namespace logse::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("logse_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(RunConfig, ResolvedDefaults) {
  RunConfig c;
  c.command = "groundstate";
  EXPECT_DOUBLE_EQ(c.resolved_dt(), 0.05);
  EXPECT_EQ(c.resolved_steps(), 200000u);
  EXPECT_DOUBLE_EQ(c.resolved_r_max(), 12.0);
  EXPECT_EQ(c.resolved_measure(), Measure::spherical);
  c.command = "evolve";
  EXPECT_DOUBLE_EQ(c.resolved_dt(), 1e-4);
  EXPECT_EQ(c.resolved_steps(), 1000u);
  c.command = "analytic";
  c.case_name = "inverse_square";
  EXPECT_EQ(c.resolved_measure(), Measure::radial);
  c.measure = "cubic";
  EXPECT_THROW((void)c.resolved_measure(), DomainError);
}

TEST(RunConfig, KeyValueEchoIsComplete) {
  RunConfig c;
  c.command = "analytic";
  c.b0 = 0.1;
  const auto text = c.to_key_value();
  EXPECT_NE(text.find("# command: analytic\n"), std::string::npos);
  EXPECT_NE(text.find("b0=0.10000000000000001\n"), std::string::npos);
  for (const char* key : {"case=", "N=", "q=", "L2=", "SY=", "measure=", "r-min=", "r-max=",
                          "points=", "spacing=", "stretch=", "dt=", "steps=", "tol=",
                          "log-floor=", "mixing=", "stride=", "f-model=", "epsilon=",
                          "point-charge=", "grid-points="}) {
    EXPECT_NE(text.find(std::string("\n") + key), std::string::npos) << key;
  }
}

TEST(Commands, AnalyticOutputsAndPrecision) {
  RunConfig c;
  c.command = "analytic";
  c.case_name = "constant";
  c.out_dir = scratch("analytic").string();
  const auto out = run_command(c);
  EXPECT_EQ(out.exit_code, exit_code::ok);
  EXPECT_EQ(out.json["schema"], "logse.analytic/1");
  EXPECT_NEAR(out.json["omega"].get<double>(), 3 * std::numbers::pi, 1e-15);
  const auto csv = slurp(fs::path(c.out_dir) / "analytic_profile.csv");
  EXPECT_NE(csv.find("r[a],psi_re,psi_im,density,entropy_density[1/a]"), std::string::npos);
  EXPECT_NE(csv.find("# case=\"constant\""), std::string::npos);
  // 17 significant digits on data rows
  EXPECT_NE(csv.find("\n0.001,"), std::string::npos);
  EXPECT_NE(csv.find("0.99999"), std::string::npos);
  EXPECT_TRUE(fs::exists(fs::path(c.out_dir) / "config.txt"));
}

TEST(Commands, IdenticalConfigsGiveIdenticalBytes) {
  for (const char* cmd : {"analytic", "groundstate", "evolve", "field"}) {
    RunConfig c;
    c.command = cmd;
    c.points = 401;
    c.steps = std::string(cmd) == "evolve" ? 50 : 200000;
    const auto a = scratch(std::string(cmd) + "_a");
    const auto b = scratch(std::string(cmd) + "_b");
    c.out_dir = a.string();
    const auto ja = run_command(c).json.dump();
    c.out_dir = b.string();
    const auto jb = run_command(c).json.dump();
    EXPECT_EQ(ja, jb) << cmd;
    for (const auto& e : fs::directory_iterator(a)) {
      EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path();
    }
  }
}

TEST(Commands, GroundStateReportsAnalyticDistance) {
  RunConfig c;
  c.command = "groundstate";
  c.b0 = 3.14159;
  c.out_dir = scratch("gs").string();
  const auto out = run_command(c);
  EXPECT_EQ(out.json["analytic_case"], "constant");
  EXPECT_LT(out.json["l2_vs_analytic"].get<double>(), 1e-3);
}

TEST(Commands, EvolveReportsNormDrift) {
  RunConfig c;
  c.command = "evolve";
  c.out_dir = scratch("evolve").string();
  const auto out = run_command(c);
  EXPECT_LT(out.json["max_norm_drift"].get<double>(), 1e-8);
}

TEST(Commands, FieldRecoversCoupling) {
  RunConfig c;
  c.command = "field";
  c.b0 = 1.0;
  c.out_dir = scratch("field").string();
  const auto out = run_command(c);
  EXPECT_NEAR(out.json["extracted_b0"].get<double>(), 1.0, 1e-6);
  EXPECT_NEAR(out.json["extracted_q"].get<double>(), 0.0, 1e-6);
}

TEST(Commands, PreconditionsSurfaceAsDomainErrors) {
  RunConfig c;
  c.command = "analytic";
  c.case_name = "general";
  c.q = 1.0;
  c.out_dir = scratch("bad").string();
  EXPECT_THROW(run_command(c), DomainError);
  c.case_name = "nonsense";
  EXPECT_THROW(run_command(c), DomainError);
  c.command = "nonsense";
  c.case_name = "constant";
  EXPECT_THROW(run_command(c), DomainError);
}

TEST(Commands, ReportJsonAndCoarseFailure) {
  RunConfig c;
  c.command = "report";
  c.json = true;
  c.out_dir = scratch("report").string();
  const auto ok = run_command(c);
  EXPECT_EQ(ok.exit_code, exit_code::ok);
  EXPECT_FALSE(ok.text);
  EXPECT_EQ(ok.json["criteria"].size(), 10u);
  for (const auto& cr : ok.json["criteria"]) {
    for (const char* k : {"id", "title", "passed", "measured", "tolerance", "reference", "detail"}) {
      EXPECT_TRUE(cr.contains(k)) << k;
    }
  }
  c.grid_points = 32;
  c.json = false;
  const auto bad = run_command(c);
  EXPECT_EQ(bad.exit_code, exit_code::acceptance_failure);
  ASSERT_TRUE(bad.text);
  EXPECT_NE(bad.text->find("FAIL  [ 1]"), std::string::npos);
}
