#pragma once

/// @file runner.hpp
/// Orchestration: evaluate one configured run (solve, measure, check),
/// write the CSV/JSON artifacts, and drive resolution studies.

#include <iosfwd>
#include <string>
#include <vector>

#include "mclaw/analysis.hpp"
#include "mclaw/config.hpp"

namespace mclaw {

struct CheckOutcome {
  std::string name;
  bool pass = false;
  double measured = 0.0;   // worst observed value
  double bound = 0.0;      // reference the measurement is held against
  double tolerance = 0.0;  // slack granted on top of the bound
};

/// One row of series.csv.
struct SeriesRow {
  double t = 0.0;
  double linf = 0.0;
  double linf_envelope = 0.0;
  double tv = 0.0;
  double tv_envelope = 0.0;
  double mass = 0.0;
  double entropy_residual_max = 0.0;  // max over steps in (previous row, t]
};

struct ScenarioResult {
  RunConfig cfg;
  long steps = 0;
  double u0_linf = 0.0;  // sup norm of the projected initial data
  double tv0 = 0.0;      // discrete TV of the projected initial data
  std::vector<Snapshot> snapshots;
  std::vector<SeriesRow> series;
  ConstantsSeries constants;
  std::vector<CheckOutcome> checks;
  bool all_pass = true;
};

/// Runs the configured scenario and evaluates every requested check.
/// No filesystem access; throws SolverAbort/OracleError from the run.
ScenarioResult evaluate_scenario(const RunConfig& cfg);

/// Writes series.csv, state_<t>.csv per output time, and report.json
/// under out_dir (created if needed).
void write_artifacts(const ScenarioResult& res, const std::string& out_dir);

/// evaluate + write + one log line per check; returns 0 when every check
/// passed, 1 otherwise.
int run_scenario(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);

struct ConvergenceResult {
  std::vector<EocRow> rows;
};

/// L1 errors against the characteristics reference at t_end across
/// resolutions. The config's checks are ignored; each run lands exactly
/// on t_end.
ConvergenceResult convergence_study(const RunConfig& cfg, const std::vector<int>& resolutions,
                                    int ode_steps, std::ostream& log);

/// Writes eoc.csv (n, error, order) under out_dir.
void write_eoc_csv(const ConvergenceResult& result, const std::string& out_dir);

}  // namespace mclaw
