/// @file test_solver.cpp
/// Finite-volume integrator: closed-form single steps, CFL sizing,
/// monotonicity of the update map, maximum principle, ordering of paired
/// runs, conservation, and abort paths.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "mclaw/solver.hpp"
#include "mclaw/util.hpp"

using namespace mclaw;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct DtRecorder : StepObserver {
  std::vector<double> dts;
  void on_step(const StepRecord& rec) override { dts.push_back(rec.dt); }
};

std::vector<double> sine_averages(const Grid& grid, const Solver& solver, double offset,
                                  double amplitude) {
  return solver.project_initial([=](const ChartPoint& p) {
    return offset + amplitude * std::sin(2.0 * kPi * p.r[0]);
  });
}

}  // namespace

// ============================================================================
// Closed-form steps
// ============================================================================

TEST_CASE("zero flux on a static metric leaves the state untouched") {
  const Grid grid(1, 16);
  const MetricField metric = MetricField::wavy_circle(0.5);
  SolverOptions opt;
  opt.t_end = 1.0;
  opt.output_times = {0.3, 1.0};
  const Solver solver(grid, metric, FluxField::zero(1), opt);
  const std::vector<double> u0 = sine_averages(grid, solver, 0.2, 0.7);
  const RunResult res = solver.run(u0);
  // No wave speeds and no metric motion: one step per output target.
  CHECK(res.steps == 2);
  const Snapshot& first = res.snapshots.front();
  for (const Snapshot& s : res.snapshots) {
    REQUIRE(s.u.size() == u0.size());
    for (std::size_t k = 0; k < u0.size(); ++k) {
      CHECK(s.u[k] == first.u[k]);
      CHECK(s.cell_mass[k] == first.cell_mass[k]);
      CHECK(s.u[k] == doctest::Approx(u0[k]).epsilon(1e-14));
    }
  }
}

TEST_CASE("zero flux on the expanding circle scales by the volume ratio") {
  const Grid grid(1, 16);
  const MetricField metric = MetricField::expanding_circle(1.0, 1.0);
  SolverOptions opt;
  opt.t_end = 0.05;
  opt.output_times = {0.05};
  const Solver solver(grid, metric, FluxField::zero(1), opt);
  const std::vector<double> u0 = sine_averages(grid, solver, 0.5, 0.5);
  const RunResult res = solver.run(u0);
  const Snapshot& last = res.snapshots.back();
  // Exact solution of the compression-only dynamics: u = u0 * R(0)/R(t).
  const double ratio = 1.0 / 1.05;
  for (std::size_t k = 0; k < u0.size(); ++k) {
    CHECK(last.u[k] == doctest::Approx(u0[k] * ratio).epsilon(1e-12));
  }
}

TEST_CASE("constant states ride isometry transport unchanged") {
  const Grid grid(2, 16);
  const MetricField metric = MetricField::torus_of_revolution(2.0, 1.0);
  const FluxField flux = FluxField::killing_rotation(0.3, FluxProfile::linear());
  SolverOptions opt;
  opt.t_end = 0.5;
  opt.output_times = {0.25, 0.5};
  const Solver solver(grid, metric, flux, opt);
  const std::vector<double> u0(grid.num_cells(), 0.7);
  const RunResult res = solver.run(u0);
  CHECK(res.steps >= 2);
  // Opposite faces of each cell carry identical coefficients and measures,
  // so the net flux of a constant state cancels bitwise and the masses never
  // move; the value is the constant up to the single division by V_K.
  const Snapshot& first = res.snapshots.front();
  for (const Snapshot& s : res.snapshots) {
    for (std::size_t k = 0; k < s.u.size(); ++k) {
      CHECK(s.u[k] == first.u[k]);
      CHECK(s.u[k] == doctest::Approx(0.7).epsilon(1e-14));
    }
  }
}

// ============================================================================
// Time-step selection
// ============================================================================

TEST_CASE("CFL step matches the hand-computed value on a square wave") {
  const Grid grid(1, 100);
  SolverOptions opt;
  opt.cfl = 0.5;
  opt.t_end = 0.1;
  opt.output_times = {0.1};
  const Solver solver(grid, MetricField::flat(1), FluxField::burgers(1, {1.0, 0.0}), opt);
  std::vector<double> u0(grid.num_cells());
  for (std::size_t k = 0; k < u0.size(); ++k) u0[k] = k < 50 ? 1.0 : -1.0;
  DtRecorder rec;
  solver.run(u0, &rec);
  REQUIRE(!rec.dts.empty());
  // V_K = 1/100, face measure 1, max |h'| = 1 somewhere: dt = 0.5 * 0.01.
  CHECK(rec.dts.front() == doctest::Approx(5e-3).epsilon(1e-12));
}

TEST_CASE("viscosity tightens the step") {
  const Grid grid(1, 64);
  SolverOptions opt;
  opt.t_end = 0.05;
  opt.output_times = {0.05};
  SolverOptions viscous = opt;
  viscous.epsilon = 0.01;
  const MetricField metric = MetricField::flat(1);
  const FluxField flux = FluxField::burgers(1, {1.0, 0.0});
  const Solver inviscid(grid, metric, flux, opt);
  const Solver parabolic(grid, metric, flux, viscous);
  const std::vector<double> u0 = sine_averages(grid, inviscid, 0.0, 1.0);
  DtRecorder ra, rb;
  inviscid.run(u0, &ra);
  parabolic.run(u0, &rb);
  CHECK(rb.dts.front() < ra.dts.front());
}

// ============================================================================
// Monotonicity of the one-step update map
// ============================================================================

TEST_CASE("update map is nondecreasing in every input cell") {
  const Grid grid(1, 16);
  const MetricField metric = MetricField::flat(1);
  const FluxField fluxes[] = {FluxField::burgers(1, {1.0, 0.0}),
                              FluxField::linear_advection(1, {-0.7, 0.0})};
  const SchemeKind schemes[] = {SchemeKind::EngquistOsher, SchemeKind::LocalLaxFriedrichs};
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const double delta = 1e-6;
  for (const FluxField& flux : fluxes) {
    for (SchemeKind scheme : schemes) {
      SolverOptions opt;
      opt.scheme = scheme;
      opt.t_end = 0.01;  // below the CFL step at n=16, so the run is one step
      opt.output_times = {0.01};
      const Solver solver(grid, metric, flux, opt);
      for (int state = 0; state < 3; ++state) {
        std::vector<double> u0(grid.num_cells());
        for (double& v : u0) v = dist(rng);
        const RunResult base = solver.run(u0);
        REQUIRE(base.steps == 1);
        for (std::size_t j = 0; j < u0.size(); ++j) {
          std::vector<double> bumped = u0;
          bumped[j] += delta;
          const RunResult probe = solver.run(bumped);
          for (std::size_t i = 0; i < u0.size(); ++i) {
            CHECK(probe.snapshots.back().u[i] >= base.snapshots.back().u[i] - 1e-12);
          }
        }
      }
    }
  }
}

// ============================================================================
// Order and bounds preservation
// ============================================================================

TEST_CASE("geometry-compatible runs obey the discrete maximum principle") {
  const Grid grid(1, 64);
  SolverOptions opt;
  opt.t_end = 0.8;
  opt.output_times = {0.2, 0.4, 0.8};
  const Solver solver(grid, MetricField::flat(1), FluxField::burgers(1, {1.0, 0.0}), opt);
  const std::vector<double> u0 = sine_averages(grid, solver, 0.1, 0.9);
  double lo = u0[0], hi = u0[0];
  for (double v : u0) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const RunResult res = solver.run(u0);
  for (const Snapshot& s : res.snapshots) {
    for (double v : s.u) {
      CHECK(v >= lo - 1e-12);
      CHECK(v <= hi + 1e-12);
    }
  }
}

TEST_CASE("paired runs preserve ordering and contract in L1") {
  const Grid grid(1, 64);
  SolverOptions opt;
  opt.t_end = 0.6;
  opt.output_times = {0.2, 0.6};
  const Solver solver(grid, MetricField::flat(1), FluxField::burgers(1, {1.0, 0.0}), opt);
  const std::vector<double> a0 = sine_averages(grid, solver, 0.0, 0.5);
  std::vector<double> b0 = a0;
  for (std::size_t k = 0; k < b0.size(); ++k) b0[k] += 0.1 * (1.0 + std::cos(2.0 * kPi * k / 64.0));
  const auto runs = solver.run_pair(a0, b0);
  REQUIRE(runs[0].snapshots.size() == runs[1].snapshots.size());
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < runs[0].snapshots.size(); ++s) {
    const Snapshot& sa = runs[0].snapshots[s];
    const Snapshot& sb = runs[1].snapshots[s];
    CHECK(sa.t == sb.t);
    double dist = 0.0;
    for (std::size_t k = 0; k < sa.u.size(); ++k) {
      CHECK(sa.u[k] <= sb.u[k]);
      dist += std::abs(sa.u[k] - sb.u[k]) * sa.volume[k];
    }
    CHECK(dist <= prev + 1e-14);
    prev = dist;
  }
}

TEST_CASE("mass is conserved through flux and metric motion") {
  const Grid grid(1, 64);
  SolverOptions opt;
  opt.t_end = 0.5;
  opt.output_times = {0.1, 0.5};
  const Solver solver(grid, MetricField::expanding_circle(1.0, 1.0),
                      FluxField::burgers(1, {1.0, 0.0}), opt);
  const std::vector<double> u0 = sine_averages(grid, solver, 0.3, 0.5);
  const RunResult res = solver.run(u0);
  const double mass0 = res.snapshots.front().mass;
  double scale = 0.0;
  for (std::size_t k = 0; k < u0.size(); ++k) {
    scale += std::abs(u0[k]) * res.snapshots.front().volume[k];
  }
  for (const Snapshot& s : res.snapshots) {
    CHECK(std::abs(s.mass - mass0) <= 1e-12 * scale);
  }
}

// ============================================================================
// Viscous mode
// ============================================================================

TEST_CASE("viscous zero-flux runs are discrete heat flows") {
  const Grid grid(1, 64);
  SolverOptions opt;
  opt.epsilon = 0.02;
  opt.t_end = 0.3;
  opt.output_times = {0.05, 0.1, 0.2, 0.3};
  const Solver solver(grid, MetricField::flat(1), FluxField::zero(1), opt);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> u0(grid.num_cells());
  for (double& v : u0) v = dist(rng);
  const RunResult res = solver.run(u0);
  double prev = std::numeric_limits<double>::infinity();
  for (const Snapshot& s : res.snapshots) {
    double l2 = 0.0;
    for (std::size_t k = 0; k < s.u.size(); ++k) l2 += s.u[k] * s.u[k] * s.volume[k];
    CHECK(l2 <= prev + 1e-14);
    prev = l2;
  }
}

// ============================================================================
// Abort paths
// ============================================================================

TEST_CASE("non-finite states abort with the step index") {
  const Grid grid(1, 16);
  SolverOptions opt;
  opt.t_end = 1.0;
  opt.output_times = {1.0};
  const Solver solver(grid, MetricField::flat(1), FluxField::zero(1), opt);
  std::vector<double> u0(grid.num_cells(), 0.0);
  u0[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(solver.run(u0), SolverAbort);
}

TEST_CASE("max_steps exhaustion aborts") {
  const Grid grid(1, 64);
  SolverOptions opt;
  opt.t_end = 1.0;
  opt.output_times = {1.0};
  opt.max_steps = 3;
  const Solver solver(grid, MetricField::flat(1), FluxField::burgers(1, {1.0, 0.0}), opt);
  const std::vector<double> u0 = sine_averages(grid, solver, 0.0, 1.0);
  CHECK_THROWS_AS(solver.run(u0), SolverAbort);
}
