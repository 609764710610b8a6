/// @file bench_solver.cpp
/// Micro benchmarks for the hot paths: the face-flux kernels, metric
/// geometry assembly, plain time stepping, and the entropy-audit overhead.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "mclaw/analysis.hpp"
#include "mclaw/grid.hpp"
#include "mclaw/solver.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

mclaw::SolverOptions short_run(double t_end) {
  mclaw::SolverOptions opt;
  opt.t_end = t_end;
  opt.output_times = {t_end};
  return opt;
}

std::vector<double> sine_data(const mclaw::Solver& solver) {
  return solver.project_initial([](const mclaw::ChartPoint& p) {
    return 0.4 + 0.5 * std::sin(2.0 * kPi * p.r[0]) * std::cos(2.0 * kPi * p.r[1]);
  });
}

void BM_numerical_flux(benchmark::State& state) {
  const auto scheme = static_cast<mclaw::SchemeKind>(state.range(0));
  const mclaw::FluxProfile profile = mclaw::FluxProfile::burgers();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> samples(4096);
  for (double& v : samples) v = dist(rng);
  for (auto _ : state) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < samples.size(); i += 2) {
      acc += mclaw::numerical_flux(scheme, profile, 0.8, samples[i], samples[i + 1]);
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * (samples.size() / 2));
}
BENCHMARK(BM_numerical_flux)
    ->Arg(static_cast<int>(mclaw::SchemeKind::EngquistOsher))
    ->Arg(static_cast<int>(mclaw::SchemeKind::LocalLaxFriedrichs));

void BM_compute_geometry_torus(benchmark::State& state) {
  const mclaw::Grid grid(2, static_cast<int>(state.range(0)));
  const mclaw::MetricField metric = mclaw::MetricField::torus_of_revolution(2.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mclaw::compute_geometry(grid, metric, 0.0));
  }
  state.SetItemsProcessed(state.iterations() * grid.num_cells());
}
BENCHMARK(BM_compute_geometry_torus)->Arg(32)->Arg(64);

void BM_step_burgers_circle(benchmark::State& state) {
  const mclaw::Grid grid(1, static_cast<int>(state.range(0)));
  const mclaw::MetricField metric = mclaw::MetricField::flat(1);
  const mclaw::FluxField flux = mclaw::FluxField::burgers(1, {1.0, 0.0});
  const mclaw::Solver solver(grid, metric, flux, short_run(0.02));
  const std::vector<double> u0 = sine_data(solver);
  long steps = 0;
  for (auto _ : state) {
    const mclaw::RunResult res = solver.run(u0);
    steps += res.steps;
    benchmark::DoNotOptimize(res.snapshots.back().u.data());
  }
  state.SetItemsProcessed(steps * static_cast<long>(grid.num_cells()));
}
BENCHMARK(BM_step_burgers_circle)->Arg(256)->Arg(1024);

void BM_step_rotation_torus(benchmark::State& state) {
  const mclaw::Grid grid(2, static_cast<int>(state.range(0)));
  const mclaw::MetricField metric = mclaw::MetricField::torus_of_revolution(2.0, 1.0);
  const mclaw::FluxField flux =
      mclaw::FluxField::killing_rotation(0.5, mclaw::FluxProfile::burgers());
  const mclaw::Solver solver(grid, metric, flux, short_run(0.02));
  const std::vector<double> u0 = sine_data(solver);
  long steps = 0;
  for (auto _ : state) {
    const mclaw::RunResult res = solver.run(u0);
    steps += res.steps;
    benchmark::DoNotOptimize(res.snapshots.back().u.data());
  }
  state.SetItemsProcessed(steps * static_cast<long>(grid.num_cells()));
}
BENCHMARK(BM_step_rotation_torus)->Arg(32)->Arg(64);

void BM_step_with_entropy_audit(benchmark::State& state) {
  const mclaw::Grid grid(1, 512);
  const mclaw::MetricField metric = mclaw::MetricField::flat(1);
  const mclaw::FluxField flux = mclaw::FluxField::burgers(1, {1.0, 0.0});
  const mclaw::Solver solver(grid, metric, flux, short_run(0.02));
  const std::vector<double> u0 = sine_data(solver);
  long steps = 0;
  for (auto _ : state) {
    mclaw::EntropyAuditor audit(mclaw::entropy_k_grid(1.0));
    const mclaw::RunResult res = solver.run(u0, &audit);
    steps += res.steps;
    benchmark::DoNotOptimize(audit.max_residual());
  }
  state.SetItemsProcessed(steps * static_cast<long>(grid.num_cells()));
}
BENCHMARK(BM_step_with_entropy_audit);

void BM_viscous_step(benchmark::State& state) {
  const mclaw::Grid grid(1, 512);
  const mclaw::MetricField metric = mclaw::MetricField::flat(1);
  const mclaw::FluxField flux = mclaw::FluxField::burgers(1, {1.0, 0.0});
  mclaw::SolverOptions opt = short_run(0.02);
  opt.epsilon = 0.01;
  const mclaw::Solver solver(grid, metric, flux, opt);
  const std::vector<double> u0 = sine_data(solver);
  long steps = 0;
  for (auto _ : state) {
    const mclaw::RunResult res = solver.run(u0);
    steps += res.steps;
    benchmark::DoNotOptimize(res.snapshots.back().u.data());
  }
  state.SetItemsProcessed(steps * static_cast<long>(grid.num_cells()));
}
BENCHMARK(BM_viscous_step);

}  // namespace

BENCHMARK_MAIN();
