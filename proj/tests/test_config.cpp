/// @file test_config.cpp
/// Config grammar: defaults, per-line validation with collected errors,
/// check parameter parsing, and the built-in scenario catalog.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>

#include "mclaw/catalog.hpp"
#include "mclaw/config.hpp"
#include "mclaw/util.hpp"

using namespace mclaw;

namespace {

bool any_message_contains(const ConfigError& ex, const std::string& needle) {
  for (const std::string& m : ex.messages) {
    if (m.find(needle) != std::string::npos) return true;
  }
  return false;
}

/// Parses text expected to fail and returns the collected messages.
std::vector<std::string> expect_errors(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& ex) {
    return ex.messages;
  }
  FAIL("expected ConfigError");
  return {};
}

const char* kMinimal = R"(
[metric]
family = flat
dim = 1
[flux]
family = burgers
)";

}  // namespace

// ============================================================================
// Defaults and happy paths
// ============================================================================

TEST_CASE("minimal config fills documented defaults") {
  const RunConfig cfg = parse_config(kMinimal);
  CHECK(cfg.dim == 1);
  CHECK(cfg.n == 64);
  CHECK(cfg.solver.cfl == 0.45);
  CHECK(cfg.solver.epsilon == 0.0);
  CHECK(cfg.solver.scheme == SchemeKind::EngquistOsher);
  CHECK(cfg.solver.t_end == 1.0);
  REQUIRE(cfg.solver.output_times.size() == 8);
  CHECK(cfg.solver.output_times.front() == doctest::Approx(0.125));
  CHECK(cfg.solver.output_times.back() == 1.0);
  CHECK(cfg.checks.empty());
  // Default initial data is identically zero.
  VarEnv env;
  env.r1 = 0.37;
  CHECK(cfg.initial.eval(env) == 0.0);
}

TEST_CASE("comments, blank lines, and spacing are ignored") {
  const RunConfig cfg = parse_config(R"(
# leading comment
  [metric]
   family =   flat
  dim=2

; another comment style
[flux]
family = linear_advection
speed = 0.5 , -0.25
[solver]
   n   =  16
)");
  CHECK(cfg.dim == 2);
  CHECK(cfg.n == 16);
  const Vec2 v = cfg.flux.vector_part(chart_point(0.1, 0.2, 0.0));
  CHECK(v[0] == 0.5);
  CHECK(v[1] == -0.25);
}

TEST_CASE("check parameters parse into tol and ode steps") {
  RunConfig cfg = parse_config(std::string(kMinimal) + R"(
[checks]
checks = mass, oracle_l1(tol=0.05, n=512), entropy(tol=1e-9)
seed = 7
)");
  REQUIRE(cfg.checks.size() == 3);
  CHECK(cfg.checks[0].name == "mass");
  CHECK(cfg.checks[1].name == "oracle_l1");
  CHECK(cfg.checks[1].tol == 0.05);
  CHECK(cfg.checks[1].ode_steps == 512);
  CHECK(cfg.checks[2].tol == 1e-9);
  CHECK(cfg.seed == 7);
}

TEST_CASE("scenario reference with solver overrides") {
  const RunConfig cfg = parse_config(R"(
[scenario]
name = burgers-flat-circle
[solver]
n = 32
t_end = 0.25
outputs = 2
)");
  CHECK(cfg.label == "burgers-flat-circle");
  CHECK(cfg.n == 32);
  CHECK(cfg.solver.t_end == 0.25);
  REQUIRE(cfg.solver.output_times.size() == 2);
  CHECK(cfg.solver.output_times.back() == 0.25);
}

// ============================================================================
// Validation and error collection
// ============================================================================

TEST_CASE("resolution bounds carry the offending line") {
  const auto messages = expect_errors(std::string(kMinimal) + "[solver]\nn = 3\n");
  REQUIRE(messages.size() == 1);
  CHECK(messages[0].find("n must be >= 4") != std::string::npos);
  CHECK(messages[0].find("line") != std::string::npos);
}

TEST_CASE("unknown flux family lists the alternatives") {
  try {
    parse_config("[metric]\nfamily = flat\n[flux]\nfamily = quintic\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& ex) {
    CHECK(any_message_contains(ex, "unknown flux family 'quintic'"));
    CHECK(any_message_contains(ex, "linear_advection"));
  }
}

TEST_CASE("duplicate keys are rejected with both line numbers") {
  const auto messages =
      expect_errors(std::string(kMinimal) + "[solver]\nn = 8\nn = 16\n");
  REQUIRE(messages.size() == 1);
  CHECK(messages[0].find("duplicate key 'n'") != std::string::npos);
}

TEST_CASE("unknown sections and keys are reported") {
  const auto m1 = expect_errors(std::string(kMinimal) + "[turbo]\nboost = 11\n");
  CHECK(m1[0].find("unknown section [turbo]") != std::string::npos);
  const auto m2 = expect_errors(std::string(kMinimal) + "[solver]\ncourant = 0.4\n");
  CHECK(m2[0].find("unknown key 'courant' in [solver]") != std::string::npos);
}

TEST_CASE("time and output validation") {
  CHECK(expect_errors(std::string(kMinimal) + "[solver]\nt_end = 0\n")[0].find(
            "t_end must be positive") != std::string::npos);
  CHECK(expect_errors(std::string(kMinimal) + "[solver]\noutput_times = 0.5, 0.25\n")[0].find(
            "strictly increasing") != std::string::npos);
  CHECK(expect_errors(std::string(kMinimal) +
                      "[solver]\noutputs = 4\noutput_times = 0.5, 1.0\n")[0]
            .find("not both") != std::string::npos);
}

TEST_CASE("unknown check names list the full vocabulary") {
  try {
    parse_config(std::string(kMinimal) + "[checks]\nchecks = masss\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& ex) {
    CHECK(any_message_contains(ex, "unknown check 'masss'"));
    for (const std::string& name : known_checks()) {
      CHECK(any_message_contains(ex, name));
    }
  }
}

TEST_CASE("check tolerances must be positive") {
  const auto messages =
      expect_errors(std::string(kMinimal) + "[checks]\nchecks = entropy(tol=0)\n");
  CHECK(messages[0].find("bad value for parameter 'tol'") != std::string::npos);
}

TEST_CASE("scenario reference excludes inline physics sections") {
  const auto messages = expect_errors(R"(
[scenario]
name = burgers-flat-circle
[metric]
family = flat
)");
  CHECK(messages[0].find("[metric] cannot be combined with a catalog scenario") !=
        std::string::npos);
}

TEST_CASE("all problems are collected into one exception") {
  const auto messages =
      expect_errors(std::string(kMinimal) + "[solver]\nn = 2\ncfl = 1.5\n");
  REQUIRE(messages.size() == 2);
  CHECK(messages[0].find("n must be") != std::string::npos);
  CHECK(messages[1].find("cfl must be in (0, 1]") != std::string::npos);
}

TEST_CASE("metric family errors surface through the parser") {
  const auto messages = expect_errors("[metric]\nfamily = wavy_circle\namplitude = 3\n"
                                      "[flux]\nfamily = zero\n");
  REQUIRE(!messages.empty());
  CHECK(messages[0].find("amplitude") != std::string::npos);
}

TEST_CASE("load_config_file reports unreadable paths") {
  CHECK_THROWS_AS(load_config_file("/nonexistent/path/run.cfg"), ConfigError);
}

// ============================================================================
// Scenario catalog
// ============================================================================

TEST_CASE("catalog has ten described scenarios") {
  const auto& infos = scenario_catalog();
  REQUIRE(infos.size() == 10);
  for (const ScenarioInfo& info : infos) {
    CHECK(!info.name.empty());
    CHECK(!info.description.empty());
    CHECK(is_scenario(info.name));
    // Every entry parses cleanly and requests at least the bookkeeping checks.
    const RunConfig cfg = scenario_config(info.name);
    CHECK(cfg.label == info.name);
    CHECK(cfg.checks.size() >= 5);
    const auto has = [&](const char* name) {
      return std::any_of(cfg.checks.begin(), cfg.checks.end(),
                         [&](const CheckRequest& c) { return c.name == name; });
    };
    CHECK(has("mass"));
    CHECK(has("linf"));
    CHECK(has("tv_envelope"));
    CHECK(has("lipschitz"));
  }
  CHECK(!is_scenario("burgers-flat-clircle"));
}

TEST_CASE("named scenario resolves to its pinned resolution") {
  const RunConfig cfg = scenario_config("burgers-flat-circle");
  CHECK(cfg.dim == 1);
  CHECK(cfg.n == 128);
  CHECK(cfg.solver.t_end == 1.0);
}

TEST_CASE("unknown scenario names list the catalog") {
  try {
    scenario_config("no-such-scenario");
    FAIL("expected ConfigError");
  } catch (const ConfigError& ex) {
    for (const ScenarioInfo& info : scenario_catalog()) {
      CHECK(any_message_contains(ex, info.name));
    }
  }
}
