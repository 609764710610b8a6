#pragma once

/// @file analysis.hpp
/// Measurements over solver trajectories: discrete total variation, L1
/// distances, the closed-form growth envelopes driven by sampled
/// constants, Kruzkov entropy residual auditing, a characteristics oracle
/// for smooth regimes, EOC tables, and the time-Lipschitz quotient.

#include <functional>
#include <span>
#include <vector>

#include "mclaw/flux.hpp"
#include "mclaw/geometry.hpp"
#include "mclaw/grid.hpp"
#include "mclaw/solver.hpp"

namespace mclaw {

/// Sum over faces of |jump| * face measure: the exact jump variation in
/// one dimension (counting measure on points), the axis-aligned surrogate
/// of the Riemannian variation in two.
double discrete_tv(const Grid& grid, const GridGeometry& geo, std::span<const double> u);

/// Sum of |a_K - b_K| * volume_K over cells.
double l1_distance(std::span<const double> a, std::span<const double> b,
                   std::span<const double> volume);

/// sup-norm envelope u0_linf * e^{I(t)} + int_0^t e^{I(t)-I(s)} c3(s) ds
/// with I the cumulative trapezoidal integral of c2 on the given lattice.
std::vector<double> linf_envelope(const std::vector<double>& times,
                                  const std::vector<double>& c2, const std::vector<double>& c3,
                                  double u0_linf);

/// Same exponential form driven by c4/c5 and seeded with tv0; for
/// epsilon > 0 the result is multiplied by exp(epsilon * int |ric|_inf).
std::vector<double> tv_envelope(const std::vector<double>& times, const std::vector<double>& c4,
                                const std::vector<double>& c5, double tv0, double epsilon,
                                const std::vector<double>& ricci_linf);

/// Envelope constants sampled along one run. The lattice refines every
/// output interval `subsamples` times so the trapezoidal integrals of the
/// c-series resolve smoothly varying rates.
struct ConstantsSeries {
  std::vector<double> times;
  std::vector<double> c2, c3, c4, c5, ricci;
  double c6 = 0.0;  // sup over lattice times of the per-time c6
  double c7 = 0.0;  // likewise for c7
  double u_max = 0.0;   // max of the sup-norm envelope over the lattice
  double tv_max = 0.0;  // max of the TV envelope over the lattice
  std::vector<double> linf_lattice;  // envelopes on the lattice
  std::vector<double> tv_lattice;
  CConstants sample0;  // full record at t = 0, for reporting
};

ConstantsSeries estimate_constants(const Grid& grid, const MetricField& metric,
                                   const FluxField& flux, const std::vector<double>& output_times,
                                   int subsamples, double u0_linf, double tv0, double epsilon);

/// Value of a lattice series at time t (t must be a lattice node).
double series_value_at(const ConstantsSeries& series, const std::vector<double>& values,
                       double t);

/// Evenly spaced Kruzkov constants spanning [-u_max, u_max].
std::vector<double> entropy_k_grid(double u_max, int count = 17);

/// Per-step audit of the discrete Kruzkov entropy balance
///   [|u-k| V]^{n+1}-[|u-k| V]^n)/dt + signed face entropy fluxes
///   + sgn(u^{n+1}-k) * (k dV/dt + scheme divergence of f(k))
/// using the scheme's own numerical flux for the entropy flux (Crandall-
/// Majda splitting) and its own face coefficients for the divergence at
/// the frozen state k. Nonpositive up to round-off for monotone fluxes
/// under the CFL bound. Viscous runs add the face difference of |u-k|,
/// valid for the diagonal-metric stencil (all built-in families).
class EntropyAuditor : public StepObserver {
 public:
  explicit EntropyAuditor(std::vector<double> ks);

  void on_step(const StepRecord& rec) override;

  double max_residual() const { return max_residual_; }
  /// Max residual since the last call (for per-output-interval reporting).
  double take_interval_max();

 private:
  std::vector<double> ks_;
  double max_residual_;
  double interval_max_;
  std::vector<double> qsum_;  // per-cell signed entropy flux sum, one k at a time
  std::vector<double> divc_;  // per-cell signed sum of C_f * measure
};

/// Solution value at chart point p and time t_end along the backward
/// characteristic, for flows that stay smooth up to t_end. u0 receives
/// wrapped chart coordinates.
double characteristics_oracle(const std::function<double(const Vec2&)>& u0,
                              const FluxField& flux, const MetricField& metric,
                              const ChartPoint& p, double t_end, int ode_steps);

/// Cell averages of the oracle solution with respect to dV_{g(t)}.
std::vector<double> oracle_cell_averages(const std::function<double(const Vec2&)>& u0,
                                         const FluxField& flux, const MetricField& metric,
                                         const Grid& grid, double t, int ode_steps,
                                         int quad_order = 4);

struct EocRow {
  int n = 0;
  double error = 0.0;
  double order = 0.0;
  bool has_order = false;  // first row and round-off rows carry no order
  bool exact = false;      // error at round-off level
};

/// Observed orders log(error ratio) / log(resolution ratio) down the column.
std::vector<EocRow> eoc_table(const std::vector<int>& resolutions,
                              const std::vector<double>& errors);

/// Max over stored snapshot pairs of
///   sum_K |u_K(t)V_K(t) - u_K(s)V_K(s)| / (t - s),
/// the L1(g(0)) difference quotient of u(t) v(t), against c6 + c7*tv_max.
struct LipschitzResult {
  double max_quotient = 0.0;
  double bound = 0.0;
};

LipschitzResult lipschitz_check(const std::vector<Snapshot>& snapshots, double c6, double c7,
                                double tv_max);

}  // namespace mclaw
