#pragma once

/// @file solver.hpp
/// Forward-Euler finite-volume integrator for
///   d/dt (u_K V_K) + sum of signed face fluxes = epsilon * viscous fluxes
/// on a periodic grid with a possibly time-dependent metric. Cell masses
/// m_K = u_K V_K(t) are the primal unknowns: the compression term enters
/// exactly through the volume ratio, and total mass telescopes to
/// round-off because each face flux is added once and subtracted once.

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "mclaw/flux.hpp"
#include "mclaw/geometry.hpp"
#include "mclaw/grid.hpp"
#include "mclaw/laplace_beltrami.hpp"

namespace mclaw {

struct SolverOptions {
  SchemeKind scheme = SchemeKind::EngquistOsher;
  double cfl = 0.45;        // in (0, 1]; monotone up to 0.5 with the paired-face bound
  double epsilon = 0.0;     // viscosity, >= 0
  double t_end = 1.0;
  std::vector<double> output_times;  // strictly increasing, last one = t_end
  long max_steps = 50000000;
  int quad_order = 4;  // projection and volume quadrature
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> u;          // cell averages
  std::vector<double> volume;     // V_K(t)
  std::vector<double> cell_mass;  // u_K V_K, the solver's primal state
  double total_volume = 0.0;
  double mass = 0.0;  // sum of u_K V_K
};

/// Everything an analysis hook needs to audit one accepted step. The spans
/// alias solver-owned buffers and are only valid during the callback.
struct StepRecord {
  long step = 0;
  double t0 = 0.0;
  double t1 = 0.0;
  double dt = 0.0;
  double epsilon = 0.0;
  SchemeKind scheme = SchemeKind::EngquistOsher;
  const FluxField* flux = nullptr;
  const Grid* grid = nullptr;
  std::span<const double> u0, u1;            // cell averages before/after
  std::span<const double> volume0, volume1;  // cell volumes before/after
  std::span<const double> face_coeff;        // normal flux coefficient C_f at t0
  std::span<const double> face_measure;      // face measures at t0
  std::span<const double> visc_normal;       // gradient-flux coefficients, empty if inviscid
};

class StepObserver {
 public:
  virtual ~StepObserver() = default;
  virtual void on_step(const StepRecord& rec) = 0;
};

class PairObserver {
 public:
  virtual ~PairObserver() = default;
  virtual void on_pair_step(const StepRecord& a, const StepRecord& b) = 0;
};

/// Stepper for one trajectory. Exposed so paired runs can advance two
/// trajectories in lockstep with a shared time step and a shared
/// dissipation range, which keeps comparison and contraction exact.
class Integrator {
 public:
  Integrator(const Grid& grid, const MetricField& metric, const FluxField& flux,
             const SolverOptions& opt);

  void initialize(std::span<const double> u_avg);

  double t() const { return t_; }
  long step_count() const { return step_; }
  const std::vector<double>& u() const { return u_; }
  double u_min() const;
  double u_max() const;

  /// Largest admissible time step from the current state: the CFL bound
  /// with wave speeds sampled over [lo, hi], the viscous bound, and the
  /// metric-motion cap |lambda| dt <= 0.1.
  double propose_dt(double lo, double hi) const;

  /// One forward-Euler step to the absolute time t1 (flux data frozen at
  /// the current time). Fills rec for observers when non-null.
  void advance_to(double t1, double lo, double hi, StepRecord* rec);

  Snapshot snapshot() const;

 private:
  void refresh_face_coeffs();

  // Held by value so an Integrator (or Solver) never outlives its inputs;
  // all three are cheap handles around shared immutable state.
  Grid grid_;
  MetricField metric_;
  FluxField flux_;
  SolverOptions opt_;
  bool static_metric_ = false;
  bool frozen_coeffs_ = false;

  double t_ = 0.0;
  long step_ = 0;
  std::vector<double> m_;       // masses (primal)
  std::vector<double> u_;       // averages at t_
  std::vector<double> u_prev_;  // averages before the last step
  GridGeometry geo_;            // at t_
  GridGeometry geo_prev_;
  std::vector<double> coeff_;   // C_f at t_
  std::vector<double> coeff_prev_;
  ViscousOperator visc_;        // at t_ (epsilon > 0 only)
  ViscousOperator visc_prev_;
  std::vector<double> net_;     // per-face scratch
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  long steps = 0;
};

class Solver {
 public:
  Solver(const Grid& grid, const MetricField& metric, const FluxField& flux,
         SolverOptions opt);

  /// Cell averages of pointwise initial data at t = 0 by metric-weighted
  /// Gauss quadrature.
  std::vector<double> project_initial(const std::function<double(const ChartPoint&)>& u0) const;

  RunResult run(std::span<const double> u0_avg, StepObserver* observer = nullptr) const;

  /// Two trajectories advanced in lockstep: shared dt, shared dissipation
  /// range. Snapshot lattices coincide, so states are directly comparable.
  std::array<RunResult, 2> run_pair(std::span<const double> a0, std::span<const double> b0,
                                    PairObserver* observer = nullptr) const;

  const SolverOptions& options() const { return opt_; }

 private:
  std::vector<double> checked_output_times() const;

  Grid grid_;
  MetricField metric_;
  FluxField flux_;
  SolverOptions opt_;
};

}  // namespace mclaw
