#include "mclaw/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mclaw/analysis.hpp"
#include "mclaw/catalog.hpp"
#include "mclaw/runner.hpp"
#include "mclaw/util.hpp"

namespace mclaw {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ==== bookkeeping =======================================================

/// What the criteria need from one (scenario, scheme) run.
struct Slim {
  std::string label;
  SchemeKind scheme = SchemeKind::EngquistOsher;
  int dim = 1;
  int n = 0;
  long steps = 0;
  double t_end = 0.0;
  double h = 0.0;
  double u0_linf = 0.0;
  double tv0 = 0.0;
  double u_max = 0.0;
  double c4_max = 0.0;
  double c5_max = 0.0;
  double entropy_max = 0.0;
  double seconds = 0.0;
  std::vector<SeriesRow> series;
  std::vector<CheckOutcome> checks;
};

const char* scheme_tag(SchemeKind s) {
  return s == SchemeKind::EngquistOsher ? "eo" : "llf";
}

Slim slim_of(const ScenarioResult& res, double seconds) {
  Slim s;
  s.label = res.cfg.label;
  s.scheme = res.cfg.solver.scheme;
  s.dim = res.cfg.dim;
  s.n = res.cfg.n;
  s.steps = res.steps;
  s.t_end = res.cfg.solver.t_end;
  s.h = 1.0 / res.cfg.n;
  s.u0_linf = res.u0_linf;
  s.tv0 = res.tv0;
  s.u_max = res.constants.u_max;
  for (double v : res.constants.c4) s.c4_max = std::max(s.c4_max, v);
  for (double v : res.constants.c5) s.c5_max = std::max(s.c5_max, v);
  for (const SeriesRow& row : res.series) {
    s.entropy_max = std::max(s.entropy_max, row.entropy_residual_max);
  }
  s.seconds = seconds;
  s.series = res.series;
  s.checks = res.checks;
  return s;
}

const CheckOutcome* find_check(const Slim& s, const std::string& name) {
  for (const CheckOutcome& c : s.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Slim evaluate_slim(RunConfig cfg, SchemeKind scheme) {
  cfg.solver.scheme = scheme;
  const auto start = std::chrono::steady_clock::now();
  const ScenarioResult res = evaluate_scenario(cfg);
  const double seconds = std::chrono::duration<double>(
      std::chrono::steady_clock::now() - start).count();
  return slim_of(res, seconds);
}

void record(std::ostream& out, int index, const char* name, bool pass,
            const std::string& detail) {
  char head[64];
  std::snprintf(head, sizeof(head), "criterion-%02d %s", index, name);
  out << (pass ? "[PASS] " : "[FAIL] ") << head << ": " << detail << "\n";
}

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// ==== scenario classification ==========================================

/// Sup of the isometry defect of d/du f over a coarse space/u/t lattice.
double sampled_defect(const RunConfig& cfg, double u_max) {
  if (cfg.flux.is_zero()) return 0.0;
  const int m = std::min(cfg.n, 16);
  const Grid probe(cfg.dim, m);
  std::vector<double> times = {0.0};
  if (cfg.metric.time_dependent() || cfg.flux.time_dependent()) {
    times.push_back(0.5 * cfg.solver.t_end);
    times.push_back(cfg.solver.t_end);
  }
  const double us[] = {-u_max, -0.5 * u_max, 0.0, 0.5 * u_max, u_max};
  double sup = 0.0;
  for (double t : times) {
    for (std::size_t k = 0; k < probe.num_cells(); ++k) {
      const ChartPoint p = probe.cell_center(k, t);
      for (double u : us) sup = std::max(sup, killing_defect(cfg.flux, cfg.metric, p, u));
    }
  }
  return sup;
}

/// Sup of |div^x f| over the same lattice; zero marks a divergence-free
/// transport field (the constants c2/c3 vanish on a static metric).
double sampled_divx(const RunConfig& cfg, double u_max) {
  if (cfg.flux.is_zero()) return 0.0;
  const int m = std::min(cfg.n, 16);
  const Grid probe(cfg.dim, m);
  std::vector<double> times = {0.0};
  if (cfg.metric.time_dependent() || cfg.flux.time_dependent()) {
    times.push_back(0.5 * cfg.solver.t_end);
    times.push_back(cfg.solver.t_end);
  }
  const double us[] = {-u_max, -0.5 * u_max, 0.0, 0.5 * u_max, u_max};
  double sup = 0.0;
  for (double t : times) {
    for (std::size_t k = 0; k < probe.num_cells(); ++k) {
      const ChartPoint p = probe.cell_center(k, t);
      for (double u : us) {
        sup = std::max(sup, std::abs(divx_at(cfg.flux, cfg.metric, p, u)));
      }
    }
  }
  return sup;
}

// ==== inline run configurations ========================================

RunConfig flat_burgers_config(const char* label, int n, const char* initial, double t_end) {
  RunConfig cfg;
  cfg.label = label;
  cfg.dim = 1;
  cfg.n = n;
  cfg.metric = MetricField::flat(1);
  cfg.flux = FluxField::burgers(1, {1.0, 0.0});
  cfg.initial = Expression::parse(initial);
  cfg.solver.t_end = t_end;
  cfg.solver.output_times = {t_end};
  return cfg;
}

/// Per-cell ordering watcher for paired runs.
class OrderWatch : public PairObserver {
 public:
  long violations = 0;
  void on_pair_step(const StepRecord& a, const StepRecord& b) override {
    for (std::size_t i = 0; i < a.u1.size(); ++i) {
      if (a.u1[i] > b.u1[i]) ++violations;
    }
  }
};

struct PairDistances {
  std::vector<double> t;
  std::vector<double> d;
  long steps = 0;
};

/// L1(g(0)) distance series between a run from the configured data and a
/// run from the same data shifted by +0.25, advanced in lockstep.
PairDistances shifted_pair_distances(const RunConfig& cfg) {
  const Grid grid(cfg.dim, cfg.n);
  const Solver solver(grid, cfg.metric, cfg.flux, cfg.solver);
  std::vector<double> a0 = solver.project_initial([&](const ChartPoint& p) {
    VarEnv env;
    env.r1 = p.r[0];
    env.r2 = p.r[1];
    return cfg.initial.eval(env);
  });
  std::vector<double> b0 = a0;
  for (double& v : b0) v += 0.25;
  const auto runs = solver.run_pair(a0, b0);
  PairDistances out;
  out.steps = runs[0].steps;
  for (std::size_t k = 0; k < runs[0].snapshots.size(); ++k) {
    const Snapshot& sa = runs[0].snapshots[k];
    const Snapshot& sb = runs[1].snapshots[k];
    out.t.push_back(sa.t);
    out.d.push_back(l1_distance(sa.u, sb.u, sa.volume));
  }
  return out;
}

}  // namespace

// ==== the suite =========================================================

int acceptance_run(std::ostream& out) {
  int failures = 0;
  const SchemeKind schemes[] = {SchemeKind::EngquistOsher, SchemeKind::LocalLaxFriedrichs};

  // Every catalog scenario under both numerical fluxes, with the catalog's
  // standard checks evaluated.
  std::vector<RunConfig> cfgs;
  std::vector<Slim> matrix;
  for (const ScenarioInfo& info : scenario_catalog()) {
    RunConfig cfg = scenario_config(info.name);
    cfgs.push_back(cfg);
    for (SchemeKind scheme : schemes) matrix.push_back(evaluate_slim(cfg, scheme));
  }

  std::map<std::string, double> defect, divx;
  std::map<std::string, bool> static_metric;
  for (const RunConfig& cfg : cfgs) {
    double u_max = 0.0;
    for (const Slim& s : matrix) {
      if (s.label == cfg.label) u_max = std::max(u_max, s.u_max);
    }
    defect[cfg.label] = sampled_defect(cfg, u_max);
    divx[cfg.label] = sampled_divx(cfg, u_max);
    static_metric[cfg.label] = !cfg.metric.time_dependent();
  }
  const auto geometry_compatible = [&](const std::string& label) {
    return static_metric[label] && divx[label] <= 1e-12;
  };

  // -- criterion 1: conservation at every output, bounded runtime --------
  {
    double worst = 0.0;
    std::string where;
    double slowest = 0.0;
    bool pass = true;
    for (const Slim& s : matrix) {
      const CheckOutcome* mass = find_check(s, "mass");
      pass = pass && mass && mass->pass;
      if (mass && mass->measured > worst) {
        worst = mass->measured;
        where = s.label + "/" + scheme_tag(s.scheme);
      }
      slowest = std::max(slowest, s.seconds);
    }
    pass = pass && slowest <= 60.0;
    record(out, 1, "conservation", pass,
           fmt("worst relative drift %.2e (%s), slowest run %.1fs", worst, where.c_str(),
               slowest));
    failures += pass ? 0 : 1;
  }

  // -- criterion 2: sup-norm envelope, exact and tight when the transport
  //    field is divergence-free on a static metric ------------------------
  {
    bool contained = true;
    double worst_overshoot = -std::numeric_limits<double>::infinity();
    for (const Slim& s : matrix) {
      const CheckOutcome* linf = find_check(s, "linf");
      contained = contained && linf && linf->pass;
      if (linf) worst_overshoot = std::max(worst_overshoot, linf->measured - linf->bound);
    }
    bool exact = true;
    double min_tightness = std::numeric_limits<double>::infinity();
    int compatible = 0;
    for (const Slim& s : matrix) {
      if (!geometry_compatible(s.label)) continue;
      ++compatible;
      for (const SeriesRow& row : s.series) {
        exact = exact && row.linf_envelope == s.u0_linf;
      }
      if (s.series.size() > 1 && s.series[1].linf_envelope > 0.0) {
        min_tightness = std::min(min_tightness, s.series[1].linf / s.series[1].linf_envelope);
      }
    }
    const bool pass = contained && exact && compatible == 14 && min_tightness >= 0.95;
    record(out, 2, "linf-envelope", pass,
           fmt("worst overshoot %.2e, %d compatible runs exact, first-output tightness %.4f",
               worst_overshoot, compatible, min_tightness));
    failures += pass ? 0 : 1;
  }

  // -- criterion 3: per-cell ordering of paired runs ----------------------
  {
    bool pass = true;
    long steps = 0, violations = 0;
    for (SchemeKind scheme : schemes) {
      RunConfig cfg = flat_burgers_config("ordered-pair", 256, "0.4 + 0.5*sin(2*pi*r1)", 1.0);
      cfg.solver.scheme = scheme;
      const Grid grid(cfg.dim, cfg.n);
      const Solver solver(grid, cfg.metric, cfg.flux, cfg.solver);
      const std::vector<double> a0 = solver.project_initial(
          [](const ChartPoint& p) { return 0.4 + 0.5 * std::sin(2.0 * kPi * p.r[0]); });
      const std::vector<double> b0 = solver.project_initial(
          [](const ChartPoint& p) { return 1.4 + 0.5 * std::sin(2.0 * kPi * p.r[0]); });
      OrderWatch watch;
      const auto runs = solver.run_pair(a0, b0, &watch);
      steps = runs[0].steps;
      violations += watch.violations;
      pass = pass && watch.violations == 0 && runs[0].steps >= 1000;
    }
    record(out, 3, "comparison", pass,
           fmt("%ld ordering violations across %ld steps per scheme", violations, steps));
    failures += pass ? 0 : 1;
  }

  // -- criterion 4: L1 contraction of lockstep pairs ----------------------
  {
    bool pass = true;
    double worst_rel_increase = 0.0;
    std::string where;
    for (const RunConfig& base : cfgs) {
      for (SchemeKind scheme : schemes) {
        RunConfig cfg = base;
        cfg.solver.scheme = scheme;
        cfg.solver.output_times.clear();
        for (int i = 1; i <= cfg.outputs; ++i) {
          cfg.solver.output_times.push_back(cfg.solver.t_end * i / cfg.outputs);
        }
        const PairDistances pd = shifted_pair_distances(cfg);
        const double scale = pd.d.front();
        const double avg_dt = cfg.solver.t_end / std::max<long>(1, pd.steps);
        const double h = 1.0 / cfg.n;
        for (std::size_t a = 0; a < pd.d.size(); ++a) {
          for (std::size_t b = a + 1; b < pd.d.size(); ++b) {
            const double increase = pd.d[b] - pd.d[a];
            if (increase / scale > worst_rel_increase) {
              worst_rel_increase = increase / scale;
              where = cfg.label + "/" + scheme_tag(scheme);
            }
            if (geometry_compatible(cfg.label)) {
              pass = pass && increase <= 1e-12 * scale;
            } else {
              pass = pass && increase <= 5.0 * (h + avg_dt) * (pd.t[b] - pd.t[a]);
            }
          }
        }
      }
    }
    record(out, 4, "l1-contraction", pass,
           fmt("worst relative increase %.2e (%s)", worst_rel_increase, where.c_str()));
    failures += pass ? 0 : 1;
  }

  // -- criterion 5: TVD exactly for isometry flows, growth inside the
  //    envelope for the shear flow ---------------------------------------
  {
    bool pass = true;
    int members = 0;
    double worst_increase = -std::numeric_limits<double>::infinity();
    for (const Slim& s : matrix) {
      const bool tvd_expected =
          defect[s.label] <= 1e-8 && s.c4_max <= 1e-8 && s.c5_max <= 1e-8;
      if (!tvd_expected) continue;
      ++members;
      const double tol = s.dim == 1 ? 1e-12 : 1e-8;
      for (std::size_t k = 1; k < s.series.size(); ++k) {
        const double increase = s.series[k].tv - s.series[k - 1].tv;
        worst_increase = std::max(worst_increase, increase);
        pass = pass && increase <= tol;
      }
    }
    pass = pass && members == 14;  // 7 scenarios x 2 schemes

    bool shear_grows = true, shear_contained = true;
    for (int n : {64, 128}) {
      for (SchemeKind scheme : schemes) {
        RunConfig cfg = scenario_config("shear-flat-torus");
        cfg.n = n;
        const Slim s = evaluate_slim(cfg, scheme);
        bool grew = false;
        for (std::size_t k = 1; k < s.series.size(); ++k) {
          grew = grew || s.series[k].tv > s.tv0;
          shear_contained =
              shear_contained && s.series[k].tv <= s.series[k].tv_envelope + 1e-10;
        }
        shear_grows = shear_grows && grew;
      }
    }
    pass = pass && shear_grows && shear_contained;
    record(out, 5, "tvd-dichotomy", pass,
           fmt("%d TVD runs, worst increase %.2e; shear grows=%d contained=%d", members,
               worst_increase, shear_grows ? 1 : 0, shear_contained ? 1 : 0));
    failures += pass ? 0 : 1;
  }

  // -- criterion 6: variation envelope containment everywhere -------------
  {
    bool pass = true;
    double worst = -std::numeric_limits<double>::infinity();
    std::string where;
    for (const Slim& s : matrix) {
      const CheckOutcome* tv = find_check(s, "tv_envelope");
      pass = pass && tv && tv->pass;
      if (tv && tv->measured - tv->bound > worst) {
        worst = tv->measured - tv->bound;
        where = s.label + "/" + scheme_tag(s.scheme);
      }
    }
    record(out, 6, "tv-containment", pass,
           fmt("worst envelope excess %.2e (%s)", worst, where.c_str()));
    failures += pass ? 0 : 1;
  }

  // -- criterion 7: entropy residual sign test; stability of the scaled
  //    residual under refinement for moving metrics -----------------------
  {
    bool pass = true;
    double riemann_worst = -std::numeric_limits<double>::infinity();
    for (SchemeKind scheme : schemes) {
      RunConfig cfg = flat_burgers_config("riemann-burgers", 128, "1 - 2*floor(2*r1)", 0.3);
      cfg.checks = {{"entropy", 0.0, 256}};
      const Slim s = evaluate_slim(cfg, scheme);
      const CheckOutcome* entropy = find_check(s, "entropy");
      pass = pass && entropy && entropy->pass;
      if (entropy) riemann_worst = std::max(riemann_worst, entropy->measured);
    }
    std::string detail = fmt("riemann max residual %.2e", riemann_worst);
    for (const char* name : {"expanding-circle-f0", "dilation-torus-f0"}) {
      const Slim* coarse = nullptr;
      for (const Slim& s : matrix) {
        if (s.label == name && s.scheme == SchemeKind::EngquistOsher) coarse = &s;
      }
      RunConfig cfg = scenario_config(name);
      cfg.n *= 2;
      const Slim fine = evaluate_slim(cfg, SchemeKind::EngquistOsher);
      const double c_coarse =
          coarse->entropy_max / (coarse->h + coarse->t_end / coarse->steps);
      const double c_fine = fine.entropy_max / (fine.h + fine.t_end / fine.steps);
      const bool sign_test = coarse->entropy_max <= 1e-10 && fine.entropy_max <= 1e-10;
      const bool stable = sign_test || (c_fine <= 2.0 * c_coarse && c_coarse <= 2.0 * c_fine);
      pass = pass && stable;
      detail += fmt("; %s C=%.2e/%.2e", name, c_coarse, c_fine);
    }
    record(out, 7, "entropy", pass, detail);
    failures += pass ? 0 : 1;
  }

  // -- criterion 8: first-order convergence against characteristics; the
  //    fluxless expanding circle is exact to round-off --------------------
  {
    const auto start = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    const std::vector<int> resolutions = {64, 128, 256};

    RunConfig smooth = flat_burgers_config("smooth-burgers", 64, "0.4 + 0.5*sin(2*pi*r1)", 0.25);
    RunConfig advect;
    advect.label = "smooth-advection";
    advect.dim = 1;
    advect.n = 64;
    advect.metric = MetricField::flat(1);
    advect.flux = FluxField::linear_advection(1, {1.0, 0.0});
    advect.initial = Expression::parse("sin(2*pi*r1)");
    advect.solver.t_end = 1.0;
    advect.solver.output_times = {1.0};

    std::ostringstream sink;
    for (const RunConfig* cfg : {&smooth, &advect}) {
      const ConvergenceResult res = convergence_study(*cfg, resolutions, 256, sink);
      for (std::size_t i = 1; i < res.rows.size(); ++i) {
        const EocRow& row = res.rows[i];
        pass = pass && row.has_order && row.order >= 0.75 && row.order <= 1.1;
        detail += fmt("%s%s n=%d order %.3f", detail.empty() ? "" : ", ",
                      cfg->label.c_str(), row.n, row.has_order ? row.order : 0.0);
      }
    }

    double worst_exact = 0.0;
    for (int n : resolutions) {
      RunConfig cfg = scenario_config("expanding-circle-f0");
      cfg.n = n;
      cfg.solver.output_times = {cfg.solver.t_end};
      const Grid grid(cfg.dim, cfg.n);
      const Solver solver(grid, cfg.metric, cfg.flux, cfg.solver);
      const std::vector<double> u0 = solver.project_initial([&](const ChartPoint& p) {
        VarEnv env;
        env.r1 = p.r[0];
        return cfg.initial.eval(env);
      });
      const RunResult run = solver.run(u0);
      const Snapshot& last = run.snapshots.back();
      const double factor = 1.0 / (1.0 + cfg.solver.t_end);  // R(0)/R(t_end)
      for (std::size_t i = 0; i < u0.size(); ++i) {
        worst_exact = std::max(worst_exact, std::abs(last.u[i] - factor * u0[i]));
      }
    }
    pass = pass && worst_exact <= 1e-10;
    const double seconds = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start).count();
    pass = pass && seconds <= 300.0;
    detail += fmt("; expanding-circle closed-form error %.2e; %.1fs", worst_exact, seconds);
    record(out, 8, "oracle-convergence", pass, detail);
    failures += pass ? 0 : 1;
  }

  // -- criterion 9: viscous solutions approach the inviscid one, distance
  //    shrinking at least 35% per halving of epsilon ----------------------
  {
    bool pass = true;
    RunConfig base = flat_burgers_config("vanishing-viscosity", 512, "sin(2*pi*r1)", 0.3);
    const Grid grid(base.dim, base.n);
    std::vector<double> u_ref;
    std::vector<double> volume;
    {
      const Solver solver(grid, base.metric, base.flux, base.solver);
      const std::vector<double> u0 = solver.project_initial(
          [](const ChartPoint& p) { return std::sin(2.0 * kPi * p.r[0]); });
      const RunResult run = solver.run(u0);
      u_ref = run.snapshots.back().u;
      volume = run.snapshots.back().volume;
    }
    std::vector<double> dists;
    std::string detail;
    for (double eps : {0.04, 0.02, 0.01, 0.005}) {
      RunConfig cfg = base;
      cfg.solver.epsilon = eps;
      const Solver solver(grid, cfg.metric, cfg.flux, cfg.solver);
      const std::vector<double> u0 = solver.project_initial(
          [](const ChartPoint& p) { return std::sin(2.0 * kPi * p.r[0]); });
      const RunResult run = solver.run(u0);
      dists.push_back(l1_distance(run.snapshots.back().u, u_ref, volume));
      detail += fmt("%sd(%.3f)=%.3e", detail.empty() ? "" : " ", eps, dists.back());
    }
    for (std::size_t i = 1; i < dists.size(); ++i) {
      pass = pass && dists[i] < dists[i - 1] && dists[i] <= 0.65 * dists[i - 1];
    }
    record(out, 9, "vanishing-viscosity", pass, detail);
    failures += pass ? 0 : 1;
  }

  // -- criterion 10: time regularity of u dV against c6 + c7 tv_max -------
  {
    bool pass = true;
    double worst_ratio = 0.0;
    std::string where;
    for (const Slim& s : matrix) {
      const CheckOutcome* lip = find_check(s, "lipschitz");
      pass = pass && lip && lip->pass;
      if (lip && lip->bound > 0.0 && lip->measured / lip->bound > worst_ratio) {
        worst_ratio = lip->measured / lip->bound;
        where = s.label + "/" + scheme_tag(s.scheme);
      }
    }
    record(out, 10, "time-lipschitz", pass,
           fmt("worst quotient/bound %.3f (%s)", worst_ratio, where.c_str()));
    failures += pass ? 0 : 1;
  }

  out << (failures == 0 ? "all criteria passed\n"
                        : fmt("%d criteria FAILED\n", failures));
  return failures;
}

}  // namespace mclaw
