#include "mclaw/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "json.hpp"

#include "mclaw/util.hpp"

namespace mclaw {

namespace {

const char* scheme_name(SchemeKind scheme) {
  return scheme == SchemeKind::EngquistOsher ? "eo" : "llf";
}

double default_tolerance(const std::string& name, int dim) {
  if (name == "mass") return 1e-12;
  if (name == "linf") return 1e-10;
  if (name == "tv_envelope") return 1e-10;
  if (name == "tv_diminishing") return dim == 1 ? 1e-12 : 1e-8;
  if (name == "entropy") return 1e-10;
  if (name == "oracle_l1") return 1e-6;
  return 0.0;  // lipschitz derives its slack from the bound
}

/// Entropy audit plus the step-end times needed to bin residual maxima
/// into output intervals afterwards.
class StepAudit : public StepObserver {
 public:
  explicit StepAudit(std::vector<double> ks) : auditor_(std::move(ks)) {}

  void on_step(const StepRecord& rec) override {
    auditor_.on_step(rec);
    step_end_.push_back(rec.t1);
    step_worst_.push_back(auditor_.take_interval_max());
  }

  double max_residual() const { return auditor_.max_residual(); }

  /// Max residual over steps ending in (t_prev, t]; steps land exactly on
  /// the output targets, so the half-open comparison is exact.
  double interval_max(double t_prev, double t) const {
    double worst = 0.0;
    bool seen = false;
    for (std::size_t i = 0; i < step_end_.size(); ++i) {
      if (step_end_[i] > t_prev && step_end_[i] <= t) {
        worst = seen ? std::max(worst, step_worst_[i]) : step_worst_[i];
        seen = true;
      }
    }
    return seen ? worst : 0.0;
  }

 private:
  EntropyAuditor auditor_;
  std::vector<double> step_end_;
  std::vector<double> step_worst_;
};

std::function<double(const ChartPoint&)> initial_fn(const Expression& expr) {
  return [&expr](const ChartPoint& p) {
    VarEnv env;
    env.r1 = p.r[0];
    env.r2 = p.r[1];
    env.t = 0.0;
    return expr.eval(env);
  };
}

std::function<double(const Vec2&)> initial_point_fn(const Expression& expr) {
  return [&expr](const Vec2& r) {
    VarEnv env;
    env.r1 = r[0];
    env.r2 = r[1];
    env.t = 0.0;
    return expr.eval(env);
  };
}

double linf_norm(std::span<const double> u) {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

/// Targets the solver will actually hit: positive, ending exactly at t_end.
std::vector<double> effective_targets(const SolverOptions& opt) {
  std::vector<double> times;
  for (double t : opt.output_times) {
    if (t > 0.0) times.push_back(t);
  }
  if (times.empty() || times.back() != opt.t_end) times.push_back(opt.t_end);
  return times;
}

CheckOutcome worst_overshoot(const std::string& name, const std::vector<SeriesRow>& series,
                             double SeriesRow::* value, double SeriesRow::* envelope,
                             double tol) {
  CheckOutcome out;
  out.name = name;
  out.tolerance = tol;
  double worst = -std::numeric_limits<double>::infinity();
  for (const SeriesRow& row : series) {
    const double overshoot = row.*value - row.*envelope;
    if (overshoot > worst) {
      worst = overshoot;
      out.measured = row.*value;
      out.bound = row.*envelope;
    }
  }
  out.pass = worst <= tol;
  return out;
}

}  // namespace

ScenarioResult evaluate_scenario(const RunConfig& cfg) {
  ScenarioResult res;
  res.cfg = cfg;
  RunConfig& c = res.cfg;
  c.solver.output_times = effective_targets(c.solver);

  const Grid grid(c.dim, c.n);
  const Solver solver(grid, c.metric, c.flux, c.solver);
  const std::vector<double> u0 = solver.project_initial(initial_fn(c.initial));

  const GridGeometry geo0 = compute_geometry(grid, c.metric, 0.0, c.solver.quad_order);
  res.u0_linf = linf_norm(u0);
  res.tv0 = discrete_tv(grid, geo0, u0);

  res.constants = estimate_constants(grid, c.metric, c.flux, c.solver.output_times,
                                     c.envelope_subsamples, res.u0_linf, res.tv0,
                                     c.solver.epsilon);

  const int k_count = c.dim == 1 ? 17 : 9;
  StepAudit audit(entropy_k_grid(res.constants.u_max, k_count));
  const RunResult run = solver.run(u0, &audit);
  res.steps = run.steps;
  res.snapshots = run.snapshots;

  const bool moving = c.metric.time_dependent();
  for (std::size_t k = 0; k < res.snapshots.size(); ++k) {
    const Snapshot& snap = res.snapshots[k];
    SeriesRow row;
    row.t = snap.t;
    row.linf = linf_norm(snap.u);
    row.linf_envelope = series_value_at(res.constants, res.constants.linf_lattice, snap.t);
    if (moving && k > 0) {
      const GridGeometry geo = compute_geometry(grid, c.metric, snap.t, c.solver.quad_order);
      row.tv = discrete_tv(grid, geo, snap.u);
    } else {
      row.tv = k == 0 ? res.tv0 : discrete_tv(grid, geo0, snap.u);
    }
    row.tv_envelope = series_value_at(res.constants, res.constants.tv_lattice, snap.t);
    row.mass = snap.mass;
    row.entropy_residual_max =
        k == 0 ? 0.0 : audit.interval_max(res.snapshots[k - 1].t, snap.t);
    res.series.push_back(row);
  }

  // Scale for relative mass drift; falls back to 1 for identically zero data.
  double mass_scale = 0.0;
  for (std::size_t i = 0; i < u0.size(); ++i) mass_scale += std::abs(u0[i]) * geo0.volume[i];
  if (mass_scale == 0.0) mass_scale = 1.0;

  for (const CheckRequest& req : c.checks) {
    const double tol = req.tol > 0.0 ? req.tol : default_tolerance(req.name, c.dim);
    CheckOutcome out;
    out.name = req.name;
    out.tolerance = tol;
    if (req.name == "mass") {
      double drift = 0.0;
      for (const SeriesRow& row : res.series) {
        drift = std::max(drift, std::abs(row.mass - res.series.front().mass));
      }
      out.measured = drift / mass_scale;
      out.bound = 0.0;
      out.pass = out.measured <= tol;
    } else if (req.name == "linf") {
      out = worst_overshoot(req.name, res.series, &SeriesRow::linf, &SeriesRow::linf_envelope,
                            tol);
    } else if (req.name == "tv_envelope") {
      out = worst_overshoot(req.name, res.series, &SeriesRow::tv, &SeriesRow::tv_envelope, tol);
    } else if (req.name == "tv_diminishing") {
      double worst = 0.0;
      for (std::size_t k = 1; k < res.series.size(); ++k) {
        worst = std::max(worst, res.series[k].tv - res.series[k - 1].tv);
      }
      out.measured = worst;
      out.bound = 0.0;
      out.pass = worst <= tol;
    } else if (req.name == "entropy") {
      out.measured = audit.max_residual();
      out.bound = 0.0;
      out.pass = out.measured <= tol;
    } else if (req.name == "oracle_l1") {
      const Snapshot& last = res.snapshots.back();
      const std::vector<double> oracle =
          oracle_cell_averages(initial_point_fn(c.initial), c.flux, c.metric, grid, last.t,
                               req.ode_steps, c.solver.quad_order);
      out.measured = l1_distance(last.u, oracle, last.volume);
      out.bound = 0.0;
      out.pass = out.measured <= tol;
    } else {  // lipschitz
      const LipschitzResult lip =
          lipschitz_check(res.snapshots, res.constants.c6, res.constants.c7,
                          res.constants.tv_max);
      out.measured = lip.max_quotient;
      out.bound = lip.bound;
      out.tolerance = 0.1 * lip.bound;
      out.pass = out.measured <= out.bound + out.tolerance;
    }
    res.all_pass = res.all_pass && out.pass;
    res.checks.push_back(std::move(out));
  }
  return res;
}

void write_artifacts(const ScenarioResult& res, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const RunConfig& c = res.cfg;

  {
    std::ofstream out(fs::path(out_dir) / "series.csv");
    out << "t,linf,linf_envelope,tv,tv_envelope,mass,entropy_residual_max\n";
    for (const SeriesRow& row : res.series) {
      out << format_full(row.t) << ',' << format_full(row.linf) << ','
          << format_full(row.linf_envelope) << ',' << format_full(row.tv) << ','
          << format_full(row.tv_envelope) << ',' << format_full(row.mass) << ','
          << format_full(row.entropy_residual_max) << '\n';
    }
  }

  const Grid grid(c.dim, c.n);
  for (const Snapshot& snap : res.snapshots) {
    char tag[32];
    std::snprintf(tag, sizeof(tag), "%.12g", snap.t);
    std::ofstream out(fs::path(out_dir) / ("state_" + std::string(tag) + ".csv"));
    out << (c.dim == 1 ? "cell_index,r1,u\n" : "cell_index,r1,r2,u\n");
    for (std::size_t k = 0; k < snap.u.size(); ++k) {
      const ChartPoint p = grid.cell_center(k, snap.t);
      out << k << ',' << format_full(p.r[0]);
      if (c.dim == 2) out << ',' << format_full(p.r[1]);
      out << ',' << format_full(snap.u[k]) << '\n';
    }
  }

  nlohmann::json j;
  j["label"] = c.label;
  j["dim"] = c.dim;
  j["n"] = c.n;
  j["scheme"] = scheme_name(c.solver.scheme);
  j["cfl"] = c.solver.cfl;
  j["epsilon"] = c.solver.epsilon;
  j["t_end"] = c.solver.t_end;
  j["steps"] = res.steps;
  j["seed"] = c.seed;
  j["all_pass"] = res.all_pass;
  j["constants"] = {{"c2", res.constants.sample0.c2}, {"c3", res.constants.sample0.c3},
                    {"c4", res.constants.sample0.c4}, {"c5", res.constants.sample0.c5},
                    {"c6", res.constants.c6},         {"c7", res.constants.c7},
                    {"u_max", res.constants.u_max},   {"tv_max", res.constants.tv_max}};
  nlohmann::json checks = nlohmann::json::object();
  for (const CheckOutcome& out : res.checks) {
    checks[out.name] = {{"pass", out.pass},
                        {"measured", out.measured},
                        {"bound", out.bound},
                        {"tolerance", out.tolerance}};
  }
  j["checks"] = checks;
  std::ofstream out(fs::path(out_dir) / "report.json");
  out << j.dump(2) << '\n';
}

int run_scenario(const RunConfig& cfg, const std::string& out_dir, std::ostream& log) {
  const ScenarioResult res = evaluate_scenario(cfg);
  write_artifacts(res, out_dir);
  for (const CheckOutcome& out : res.checks) {
    char detail[160];
    std::snprintf(detail, sizeof(detail), "measured=%.6e bound=%.6e tol=%.6e", out.measured,
                  out.bound, out.tolerance);
    log << (out.pass ? "[PASS] " : "[FAIL] ") << res.cfg.label << '/' << out.name << ": "
        << detail << '\n';
  }
  log << res.cfg.label << ": " << (res.all_pass ? "all checks passed" : "CHECKS FAILED")
      << " (" << res.steps << " steps, n=" << res.cfg.n << ", scheme="
      << scheme_name(res.cfg.solver.scheme) << ")\n";
  return res.all_pass ? 0 : 1;
}

ConvergenceResult convergence_study(const RunConfig& cfg, const std::vector<int>& resolutions,
                                    int ode_steps, std::ostream& log) {
  if (resolutions.empty()) throw ConfigError("need at least one resolution");
  if (cfg.solver.epsilon > 0.0) {
    throw ConfigError("convergence study needs epsilon = 0: the characteristics oracle does not cover viscous runs");
  }
  std::vector<double> errors;
  for (int n : resolutions) {
    if (n < 4 || n > 65536) throw ConfigError("resolutions must lie in [4, 65536]");
    RunConfig c = cfg;
    c.n = n;
    c.solver.output_times = {c.solver.t_end};
    const Grid grid(c.dim, c.n);
    const Solver solver(grid, c.metric, c.flux, c.solver);
    const std::vector<double> u0 = solver.project_initial(initial_fn(c.initial));
    const RunResult run = solver.run(u0);
    const Snapshot& last = run.snapshots.back();
    const std::vector<double> oracle = oracle_cell_averages(
        initial_point_fn(c.initial), c.flux, c.metric, grid, last.t, ode_steps,
        c.solver.quad_order);
    errors.push_back(l1_distance(last.u, oracle, last.volume));
  }
  ConvergenceResult result;
  result.rows = eoc_table(resolutions, errors);
  log << "     n               L1 error    order\n";
  for (const EocRow& row : result.rows) {
    char line[96];
    if (row.exact) {
      std::snprintf(line, sizeof(line), "%6d %22.12e    exact", row.n, row.error);
    } else if (row.has_order) {
      std::snprintf(line, sizeof(line), "%6d %22.12e %8.3f", row.n, row.error, row.order);
    } else {
      std::snprintf(line, sizeof(line), "%6d %22.12e        -", row.n, row.error);
    }
    log << line << '\n';
  }
  return result;
}

void write_eoc_csv(const ConvergenceResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::ofstream out(fs::path(out_dir) / "eoc.csv");
  out << "n,error,order\n";
  for (const EocRow& row : result.rows) {
    out << row.n << ',' << format_full(row.error) << ',';
    if (row.has_order) out << format_full(row.order);
    out << '\n';
  }
}

}  // namespace mclaw
