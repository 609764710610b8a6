/// @file test_runner.cpp
/// End-to-end orchestration: scenario evaluation, artifact layout,
/// determinism of the writers, and resolution studies.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "mclaw/catalog.hpp"
#include "mclaw/runner.hpp"
#include "mclaw/util.hpp"

using namespace mclaw;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

/// Unique scratch directory under the system temp root, removed on scope exit.
struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const char* tag) {
    path = fs::temp_directory_path() / (std::string("mclaw_test_") + tag);
    fs::remove_all(path);
  }
  ~ScratchDir() { fs::remove_all(path); }
};

RunConfig small_burgers() {
  RunConfig cfg = scenario_config("burgers-flat-circle");
  cfg.n = 64;
  cfg.solver.t_end = 0.25;
  cfg.solver.output_times = {0.125, 0.25};
  return cfg;
}

}  // namespace

// ============================================================================
// evaluate_scenario
// ============================================================================

TEST_CASE("scenario evaluation populates series, constants, and checks") {
  const RunConfig cfg = small_burgers();
  const ScenarioResult res = evaluate_scenario(cfg);
  CHECK(res.steps > 0);
  CHECK(res.u0_linf > 0.8);
  CHECK(res.tv0 > 0.0);
  REQUIRE(res.series.size() == 3);  // t = 0 plus two outputs
  CHECK(res.series[0].t == 0.0);
  CHECK(res.series.back().t == 0.25);
  for (const SeriesRow& row : res.series) {
    CHECK(row.linf <= row.linf_envelope + 1e-12);
    CHECK(row.tv <= row.tv_envelope + 1e-12);
  }
  REQUIRE(res.checks.size() == cfg.checks.size());
  CHECK(res.all_pass);
  for (const CheckOutcome& c : res.checks) CHECK(c.pass);
  CHECK(res.constants.c7 > 0.0);  // Burgers transport has a genuine wave speed
}

TEST_CASE("a violated check is reported by name without aborting") {
  // Shear transport grows the variation, so demanding a nonincreasing TV
  // must fail while every other requested check still passes.
  RunConfig cfg = scenario_config("shear-flat-torus");
  cfg.n = 32;
  cfg.solver.t_end = 0.5;
  cfg.solver.output_times = {0.25, 0.5};
  cfg.checks.push_back({"tv_diminishing", 0.0, 256});
  const ScenarioResult res = evaluate_scenario(cfg);
  CHECK(!res.all_pass);
  bool found = false;
  for (const CheckOutcome& c : res.checks) {
    if (c.name == "tv_diminishing") {
      found = true;
      CHECK(!c.pass);
      CHECK(c.measured > c.bound + c.tolerance);
    } else {
      CHECK(c.pass);
    }
  }
  CHECK(found);
}

TEST_CASE("exactly solvable expansion passes a 1e-6 oracle tolerance") {
  RunConfig cfg = scenario_config("expanding-circle-f0");
  cfg.n = 64;
  cfg.checks = {{"oracle_l1", 1e-6, 256}};
  const ScenarioResult res = evaluate_scenario(cfg);
  REQUIRE(res.checks.size() == 1);
  CHECK(res.checks[0].pass);
  CHECK(res.checks[0].measured <= 1e-6);
}

// ============================================================================
// Artifacts
// ============================================================================

TEST_CASE("artifact files carry the documented layout") {
  const ScratchDir dir("artifacts");
  const RunConfig cfg = small_burgers();
  std::ostringstream log;
  const int rc = run_scenario(cfg, dir.path.string(), log);
  CHECK(rc == 0);
  CHECK(log.str().find("mass") != std::string::npos);

  const std::string series = slurp(dir.path / "series.csv");
  CHECK(first_line(series) ==
        "t,linf,linf_envelope,tv,tv_envelope,mass,entropy_residual_max");
  // Header plus one row per series entry (t = 0, 0.125, 0.25).
  CHECK(std::count(series.begin(), series.end(), '\n') == 4);

  CHECK(fs::exists(dir.path / "state_0.csv"));
  CHECK(fs::exists(dir.path / "state_0.125.csv"));
  const std::string state = slurp(dir.path / "state_0.25.csv");
  CHECK(first_line(state) == "cell_index,r1,u");
  CHECK(std::count(state.begin(), state.end(), '\n') == 1 + cfg.n);

  const auto report = nlohmann::json::parse(slurp(dir.path / "report.json"));
  CHECK(report.at("label") == cfg.label);
  CHECK(report.at("all_pass") == true);
  CHECK(report.at("steps").get<long>() > 0);
  REQUIRE(report.at("checks").is_object());
  REQUIRE(report.at("checks").size() == cfg.checks.size());
  for (const auto& [name, c] : report.at("checks").items()) {
    CHECK(!name.empty());
    CHECK(c.contains("pass"));
    CHECK(c.contains("measured"));
    CHECK(c.contains("bound"));
    CHECK(c.contains("tolerance"));
  }
  CHECK(report.at("constants").contains("c7"));
  CHECK(report.at("constants").contains("tv_max"));
}

TEST_CASE("identical configurations write byte-identical artifacts") {
  const ScratchDir a("determinism_a");
  const ScratchDir b("determinism_b");
  const RunConfig cfg = small_burgers();
  write_artifacts(evaluate_scenario(cfg), a.path.string());
  write_artifacts(evaluate_scenario(cfg), b.path.string());
  CHECK(slurp(a.path / "series.csv") == slurp(b.path / "series.csv"));
  CHECK(slurp(a.path / "report.json") == slurp(b.path / "report.json"));
  CHECK(slurp(a.path / "state_0.25.csv") == slurp(b.path / "state_0.25.csv"));
}

// ============================================================================
// Convergence studies
// ============================================================================

TEST_CASE("advection refines at first order") {
  RunConfig cfg = scenario_config("linear-advection-circle");
  cfg.solver.t_end = 0.5;
  cfg.solver.output_times.clear();
  std::ostringstream log;
  const ConvergenceResult res = convergence_study(cfg, {32, 64, 128}, 128, log);
  REQUIRE(res.rows.size() == 3);
  for (std::size_t i = 0; i + 1 < res.rows.size(); ++i) {
    CHECK(res.rows[i + 1].error < res.rows[i].error);
  }
  CHECK(res.rows[1].order > 0.7);
  CHECK(res.rows[2].order > 0.7);
  CHECK(log.str().find("order") != std::string::npos);
  CHECK(log.str().find("128") != std::string::npos);
}

TEST_CASE("exactly representable decay hits round-off at every resolution") {
  // Fluxless expansion scales every cell average by the same factor, so the
  // finite-volume run reproduces the oracle exactly.
  RunConfig cfg = scenario_config("expanding-circle-f0");
  cfg.solver.output_times.clear();
  std::ostringstream log;
  const ConvergenceResult res = convergence_study(cfg, {16, 32}, 1024, log);
  for (const EocRow& row : res.rows) {
    CHECK(row.exact);
    CHECK(row.error <= 1e-12);
  }
}

TEST_CASE("eoc.csv carries the n,error,order header") {
  const ScratchDir dir("eoc");
  RunConfig cfg = scenario_config("linear-advection-circle");
  cfg.solver.t_end = 0.25;
  cfg.solver.output_times.clear();
  std::ostringstream log;
  const ConvergenceResult res = convergence_study(cfg, {16, 32}, 64, log);
  write_eoc_csv(res, dir.path.string());
  const std::string text = slurp(dir.path / "eoc.csv");
  CHECK(first_line(text) == "n,error,order");
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("viscous configurations cannot run a convergence study") {
  RunConfig cfg = scenario_config("viscous-burgers-a");
  std::ostringstream log;
  CHECK_THROWS_AS(convergence_study(cfg, {16, 32}, 64, log), ConfigError);
}
