/// @file mclaw.cpp
/// Command-line frontend: runs verification scenarios, convergence studies,
/// and the full acceptance suite for the manifold conservation-law solver.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mclaw/acceptance.hpp"
#include "mclaw/catalog.hpp"
#include "mclaw/config.hpp"
#include "mclaw/runner.hpp"
#include "mclaw/util.hpp"

namespace {

constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitSolverAbort = 3;

/// Resolves a positional config argument: catalog name first, file second.
mclaw::RunConfig resolve_config(const std::string& arg) {
  if (mclaw::is_scenario(arg)) return mclaw::scenario_config(arg);
  return mclaw::load_config_file(arg);
}

/// MCLAW_THREADS bounds the worker count. The pipeline runs single-threaded,
/// so any positive bound is honored; the value is still validated here.
void validate_thread_env() {
  const char* raw = std::getenv("MCLAW_THREADS");
  if (raw == nullptr) return;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 1) {
    throw mclaw::ConfigError("MCLAW_THREADS must be a positive integer, got '" +
                             std::string(raw) + "'");
  }
}

int list_scenarios() {
  std::size_t width = 0;
  for (const mclaw::ScenarioInfo& info : mclaw::scenario_catalog()) {
    width = std::max(width, info.name.size());
  }
  for (const mclaw::ScenarioInfo& info : mclaw::scenario_catalog()) {
    std::cout << info.name << std::string(width + 2 - info.name.size(), ' ')
              << info.description << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume solver and verification harness for scalar "
               "conservation laws on periodic one- and two-dimensional charts"};
  app.require_subcommand(1);

  std::string config_spec;
  std::string out_dir = "out";
  CLI::App* run = app.add_subcommand("run", "Run one scenario and write series/state/report artifacts");
  run->add_option("config", config_spec, "catalog scenario name or config file path")->required();
  run->add_option("--out", out_dir, "output directory (default: out)");

  std::string conv_spec;
  std::string conv_out = "out";
  std::vector<int> resolutions;
  int ode_steps = 256;
  CLI::App* converge = app.add_subcommand("converge", "L1 convergence study against the characteristics oracle");
  converge->add_option("config", conv_spec, "catalog scenario name or config file path")->required();
  converge->add_option("--resolutions", resolutions, "comma-separated cell counts, e.g. 64,128,256")
      ->required()
      ->delimiter(',');
  converge->add_option("--ode-steps", ode_steps, "characteristic integrator steps (default: 256)");
  converge->add_option("--out", conv_out, "output directory for eoc.csv (default: out)");

  CLI::App* list = app.add_subcommand("list-scenarios", "List the built-in scenario catalog");
  CLI::App* check_all = app.add_subcommand("check-all", "Run the full acceptance suite over the catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex) == 0 ? 0 : kExitConfigError;
  }

  try {
    validate_thread_env();
    if (run->parsed()) {
      const mclaw::RunConfig cfg = resolve_config(config_spec);
      return mclaw::run_scenario(cfg, out_dir, std::cout) == 0 ? 0 : kExitCheckFailure;
    }
    if (converge->parsed()) {
      const mclaw::RunConfig cfg = resolve_config(conv_spec);
      if (ode_steps < 1) throw mclaw::ConfigError("--ode-steps must be >= 1");
      const mclaw::ConvergenceResult result =
          mclaw::convergence_study(cfg, resolutions, ode_steps, std::cout);
      mclaw::write_eoc_csv(result, conv_out);
      return 0;
    }
    if (list->parsed()) return list_scenarios();
    if (check_all->parsed()) {
      return mclaw::acceptance_run(std::cout) == 0 ? 0 : kExitCheckFailure;
    }
  } catch (const mclaw::ConfigError& ex) {
    for (const std::string& message : ex.messages) std::cerr << "error: " << message << "\n";
    return kExitConfigError;
  } catch (const mclaw::OracleError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitConfigError;
  } catch (const mclaw::SolverAbort& ex) {
    std::cerr << "solver abort at step " << ex.step_index << ": " << ex.what() << "\n";
    return kExitSolverAbort;
  }
  return 0;
}
