#include "mclaw/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mclaw/util.hpp"

namespace mclaw {

namespace {

constexpr double kLambdaCap = 0.1;       // max |lambda| * dt per step
constexpr double kUnderflowFactor = 1e-12;  // dt < factor * t_end aborts

void validate_options(const SolverOptions& opt) {
  std::vector<std::string> errors;
  if (!(opt.cfl > 0.0) || opt.cfl > 1.0) errors.push_back("cfl must be in (0, 1]");
  if (opt.epsilon < 0.0) errors.push_back("epsilon must be >= 0");
  if (!(opt.t_end > 0.0)) errors.push_back("t_end must be positive");
  if (opt.max_steps <= 0) errors.push_back("max_steps must be positive");
  if (!errors.empty()) throw ConfigError(errors);
}

}  // namespace

Integrator::Integrator(const Grid& grid, const MetricField& metric, const FluxField& flux,
                       const SolverOptions& opt)
    : grid_(grid), metric_(metric), flux_(flux), opt_(opt) {
  validate_options(opt);
  static_metric_ = !metric.time_dependent();
  frozen_coeffs_ = static_metric_ && !flux.time_dependent();
}

void Integrator::initialize(std::span<const double> u_avg) {
  t_ = 0.0;
  step_ = 0;
  geo_ = compute_geometry(grid_, metric_, 0.0, opt_.quad_order);
  geo_prev_ = geo_;
  m_.resize(u_avg.size());
  u_.resize(u_avg.size());
  // Masses are the primal state; representing u as m/V from the start keeps
  // every later no-op step (zero net flux, static volumes) bitwise identical.
  for (std::size_t k = 0; k < u_avg.size(); ++k) {
    m_[k] = u_avg[k] * geo_.volume[k];
    u_[k] = m_[k] / geo_.volume[k];
  }
  u_prev_ = u_;
  refresh_face_coeffs();
  if (opt_.epsilon > 0.0) visc_ = build_viscous_operator(grid_, metric_, 0.0);
}

void Integrator::refresh_face_coeffs() {
  coeff_.resize(grid_.num_faces());
  if (flux_.is_zero()) {
    std::fill(coeff_.begin(), coeff_.end(), 0.0);
    return;
  }
  const int dim = grid_.dim();
  parallel_for(grid_.num_faces(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      const Grid::FaceInfo info = grid_.face(f);
      const ChartPoint p = dim == 1 ? chart_point(info.center[0], t_)
                                    : chart_point(info.center[0], info.center[1], t_);
      const Vec2 v = flux_.vector_part(p);
      const Vec2& nu = geo_.face_normal[f];
      coeff_[f] = v[0] * nu[0] + v[1] * nu[1];
    }
  });
}

double Integrator::u_min() const {
  double m = u_[0];
  for (double v : u_) m = std::min(m, v);
  return m;
}

double Integrator::u_max() const {
  double m = u_[0];
  for (double v : u_) m = std::max(m, v);
  return m;
}

double Integrator::propose_dt(double lo, double hi) const {
  double dt = std::numeric_limits<double>::infinity();
  const int dim = grid_.dim();
  const int n = grid_.n();
  const bool convective = !flux_.is_zero();
  const double eps = opt_.epsilon;
  if (convective || eps > 0.0) {
    // Wave speed factor shared by every face: |phi'| over the state range.
    const double kphi = convective ? max_wave_speed(flux_.profile(), 1.0, lo, hi) : 0.0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid_.num_cells(); ++k) {
      const int i = static_cast<int>(k % static_cast<std::size_t>(n));
      const int j = static_cast<int>(k / static_cast<std::size_t>(n));
      double denom = 0.0;
      double max_meas_sq = 0.0;
      for (int axis = 0; axis < dim; ++axis) {
        std::size_t fm, fp;
        if (axis == 0) {
          fm = static_cast<std::size_t>(i) + static_cast<std::size_t>(n) * static_cast<std::size_t>(j);
          fp = static_cast<std::size_t>((i + 1) % n) + static_cast<std::size_t>(n) * static_cast<std::size_t>(j);
        } else {
          const std::size_t base = grid_.num_cells();
          fm = base + static_cast<std::size_t>(i) + static_cast<std::size_t>(n) * static_cast<std::size_t>(j);
          fp = base + static_cast<std::size_t>(i) +
               static_cast<std::size_t>(n) * static_cast<std::size_t>((j + 1) % n);
        }
        if (convective) {
          const double am = std::abs(coeff_[fm]) * kphi * geo_.face_measure[fm];
          const double ap = std::abs(coeff_[fp]) * kphi * geo_.face_measure[fp];
          denom += std::max(am, ap);
        }
        if (eps > 0.0) {
          max_meas_sq = std::max(max_meas_sq, geo_.face_measure[fm] * geo_.face_measure[fm]);
          max_meas_sq = std::max(max_meas_sq, geo_.face_measure[fp] * geo_.face_measure[fp]);
        }
      }
      if (eps > 0.0) denom += 2.0 * dim * eps * max_meas_sq / geo_.volume[k];
      if (denom > 0.0) worst = std::min(worst, geo_.volume[k] / denom);
    }
    dt = opt_.cfl * worst;
  }
  if (!static_metric_) {
    double lam_max = 0.0;
    for (std::size_t k = 0; k < grid_.num_cells(); ++k) {
      lam_max = std::max(lam_max, std::abs(metric_.lambda(grid_.cell_center(k, t_))));
    }
    if (lam_max > 0.0) dt = std::min(dt, kLambdaCap / lam_max);
  }
  return dt;
}

void Integrator::advance_to(double t1, double /*lo*/, double /*hi*/, StepRecord* rec) {
  const double dt = t1 - t_;
  const bool convective = !flux_.is_zero();
  const double eps = opt_.epsilon;
  const SchemeKind scheme = opt_.scheme;
  const FluxProfile& profile = flux_.profile();

  // Net outward flux through each face, oriented left to right.
  std::vector<double>& net = net_;
  net.assign(grid_.num_faces(), 0.0);
  parallel_for(grid_.num_faces(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      const Grid::FaceInfo info = grid_.face(f);
      double value = 0.0;
      if (convective) {
        value = numerical_flux(scheme, profile, coeff_[f], u_[info.left], u_[info.right]) *
                geo_.face_measure[f];
      }
      if (eps > 0.0) value -= eps * viscous_face_flux(grid_, visc_, f, u_);
      net[f] = value;
    }
  });

  // Gather per cell in a fixed order: masses change by the signed sum of
  // their face fluxes, so the total telescopes.
  const int dim = grid_.dim();
  const int n = grid_.n();
  parallel_for(grid_.num_cells(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const int i = static_cast<int>(k % static_cast<std::size_t>(n));
      const int j = static_cast<int>(k / static_cast<std::size_t>(n));
      double in = 0.0;
      {
        const std::size_t fm = static_cast<std::size_t>(i) +
                               static_cast<std::size_t>(n) * static_cast<std::size_t>(j);
        const std::size_t fp = static_cast<std::size_t>((i + 1) % n) +
                               static_cast<std::size_t>(n) * static_cast<std::size_t>(j);
        in += net[fm] - net[fp];
      }
      if (dim == 2) {
        const std::size_t base = grid_.num_cells();
        const std::size_t fm = base + static_cast<std::size_t>(i) +
                               static_cast<std::size_t>(n) * static_cast<std::size_t>(j);
        const std::size_t fp = base + static_cast<std::size_t>(i) +
                               static_cast<std::size_t>(n) * static_cast<std::size_t>((j + 1) % n);
        in += net[fm] - net[fp];
      }
      m_[k] += dt * in;
    }
  });

  if (!static_metric_) {
    std::swap(geo_prev_, geo_);
    geo_ = compute_geometry(grid_, metric_, t1, opt_.quad_order);
  }
  u_prev_.swap(u_);
  u_.resize(m_.size());
  bool finite = true;
  for (std::size_t k = 0; k < m_.size(); ++k) {
    u_[k] = m_[k] / geo_.volume[k];
    finite = finite && std::isfinite(u_[k]);
  }
  const double t0 = t_;
  t_ = t1;
  ++step_;
  if (!finite) throw SolverAbort("non-finite state after step", step_);

  const bool coeffs_were_frozen = frozen_coeffs_;
  if (rec) {
    rec->step = step_;
    rec->t0 = t0;
    rec->t1 = t1;
    rec->dt = dt;
    rec->epsilon = eps;
    rec->scheme = scheme;
    rec->flux = &flux_;
    rec->grid = &grid_;
    rec->u0 = u_prev_;
    rec->u1 = u_;
    rec->volume0 = geo_prev_.volume;
    rec->volume1 = geo_.volume;
    rec->face_coeff = coeff_;  // still the t0 coefficients at this point
    rec->face_measure = static_metric_ ? geo_.face_measure : geo_prev_.face_measure;
    rec->visc_normal = eps > 0.0 ? std::span<const double>(visc_.normal_coeff)
                                 : std::span<const double>();
  }
  // Refresh data frozen at the step start for the next step. The record
  // handed to observers must keep aliasing the t0 arrays, so park those in
  // the _prev buffers instead of overwriting them.
  if (!coeffs_were_frozen) {
    coeff_prev_.swap(coeff_);
    if (rec) rec->face_coeff = coeff_prev_;
    refresh_face_coeffs();
  }
  if (eps > 0.0 && !static_metric_) {
    visc_prev_ = std::move(visc_);
    if (rec) rec->visc_normal = visc_prev_.normal_coeff;
    visc_ = build_viscous_operator(grid_, metric_, t_);
  }
}

Snapshot Integrator::snapshot() const {
  Snapshot s;
  s.t = t_;
  s.u = u_;
  s.volume = geo_.volume;
  s.cell_mass = m_;
  s.total_volume = geo_.total_volume;
  double mass = 0.0;
  for (double m : m_) mass += m;
  s.mass = mass;
  return s;
}

Solver::Solver(const Grid& grid, const MetricField& metric, const FluxField& flux,
               SolverOptions opt)
    : grid_(grid), metric_(metric), flux_(flux), opt_(std::move(opt)) {
  validate_options(opt_);
  if (metric.dim() != grid.dim() || flux.dim() != grid.dim()) {
    throw ConfigError("grid, metric and flux dimensions must agree");
  }
}

std::vector<double> Solver::project_initial(
    const std::function<double(const ChartPoint&)>& u0) const {
  const std::vector<double> mass = integrate_cells(grid_, metric_, 0.0, u0, opt_.quad_order);
  const GridGeometry geo = compute_geometry(grid_, metric_, 0.0, opt_.quad_order);
  std::vector<double> avg(mass.size());
  for (std::size_t k = 0; k < mass.size(); ++k) avg[k] = mass[k] / geo.volume[k];
  return avg;
}

std::vector<double> Solver::checked_output_times() const {
  std::vector<double> times;
  for (double t : opt_.output_times) {
    if (t <= 0.0) continue;
    times.push_back(t);
  }
  std::vector<std::string> errors;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    if (!(times[i] < times[i + 1])) errors.push_back("output times must be strictly increasing");
  }
  for (double t : times) {
    if (t > opt_.t_end) errors.push_back("output times must lie within [0, t_end]");
  }
  if (!errors.empty()) throw ConfigError(errors);
  if (times.empty() || times.back() < opt_.t_end) times.push_back(opt_.t_end);
  return times;
}

RunResult Solver::run(std::span<const double> u0_avg, StepObserver* observer) const {
  const std::vector<double> targets = checked_output_times();
  Integrator integ(grid_, metric_, flux_, opt_);
  integ.initialize(u0_avg);
  RunResult res;
  res.snapshots.push_back(integ.snapshot());
  StepRecord rec;
  for (double target : targets) {
    while (integ.t() < target) {
      const double lo = integ.u_min();
      const double hi = integ.u_max();
      const double proposal = integ.propose_dt(lo, hi);
      double t1 = integ.t() + proposal;
      if (!(t1 < target)) t1 = target;
      const double dt = t1 - integ.t();
      if (t1 < target && dt < kUnderflowFactor * opt_.t_end) {
        throw SolverAbort("time step underflow (degenerate geometry or wave speed)",
                          integ.step_count());
      }
      if (!(dt > 0.0)) {
        throw SolverAbort("time step vanished before reaching the next output",
                          integ.step_count());
      }
      integ.advance_to(t1, lo, hi, observer ? &rec : nullptr);
      if (observer) observer->on_step(rec);
      if (integ.step_count() >= opt_.max_steps) {
        throw SolverAbort("max_steps exceeded", integ.step_count());
      }
    }
    res.snapshots.push_back(integ.snapshot());
  }
  res.steps = integ.step_count();
  return res;
}

std::array<RunResult, 2> Solver::run_pair(std::span<const double> a0,
                                          std::span<const double> b0,
                                          PairObserver* observer) const {
  const std::vector<double> targets = checked_output_times();
  Integrator ia(grid_, metric_, flux_, opt_);
  Integrator ib(grid_, metric_, flux_, opt_);
  ia.initialize(a0);
  ib.initialize(b0);
  std::array<RunResult, 2> res;
  res[0].snapshots.push_back(ia.snapshot());
  res[1].snapshots.push_back(ib.snapshot());
  StepRecord ra, rb;
  for (double target : targets) {
    while (ia.t() < target) {
      const double lo = std::min(ia.u_min(), ib.u_min());
      const double hi = std::max(ia.u_max(), ib.u_max());
      const double proposal = std::min(ia.propose_dt(lo, hi), ib.propose_dt(lo, hi));
      double t1 = ia.t() + proposal;
      if (!(t1 < target)) t1 = target;
      const double dt = t1 - ia.t();
      if (t1 < target && dt < kUnderflowFactor * opt_.t_end) {
        throw SolverAbort("time step underflow (degenerate geometry or wave speed)",
                          ia.step_count());
      }
      if (!(dt > 0.0)) {
        throw SolverAbort("time step vanished before reaching the next output",
                          ia.step_count());
      }
      ia.advance_to(t1, lo, hi, observer ? &ra : nullptr);
      ib.advance_to(t1, lo, hi, observer ? &rb : nullptr);
      if (observer) observer->on_pair_step(ra, rb);
      if (ia.step_count() >= opt_.max_steps) {
        throw SolverAbort("max_steps exceeded", ia.step_count());
      }
    }
    res[0].snapshots.push_back(ia.snapshot());
    res[1].snapshots.push_back(ib.snapshot());
  }
  res[0].steps = ia.step_count();
  res[1].steps = ib.step_count();
  return res;
}

}  // namespace mclaw
