#include "mclaw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mclaw/util.hpp"

namespace mclaw {

double discrete_tv(const Grid& grid, const GridGeometry& geo, std::span<const double> u) {
  double tv = 0.0;
  for (std::size_t f = 0; f < grid.num_faces(); ++f) {
    const Grid::FaceInfo info = grid.face(f);
    tv += std::abs(u[info.right] - u[info.left]) * geo.face_measure[f];
  }
  return tv;
}

double l1_distance(std::span<const double> a, std::span<const double> b,
                   std::span<const double> volume) {
  if (a.size() != b.size() || a.size() != volume.size()) {
    throw ConfigError("l1_distance needs states on the same grid");
  }
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d += std::abs(a[k] - b[k]) * volume[k];
  return d;
}

namespace {

// Cumulative trapezoidal integral of values over times, starting at 0.
std::vector<double> cumulative_trapezoid(const std::vector<double>& times,
                                         const std::vector<double>& values) {
  std::vector<double> out(times.size(), 0.0);
  for (std::size_t i = 1; i < times.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (values[i] + values[i - 1]) * (times[i] - times[i - 1]);
  }
  return out;
}

// Shared exponential-envelope kernel:
//   seed * e^{I(t)} + int_0^t e^{I(t) - I(s)} rate(s) ds
// evaluated as e^{I} * (seed + J) with J the trapezoidal integral of
// e^{-I(s)} rate(s).
std::vector<double> exponential_envelope(const std::vector<double>& times,
                                         const std::vector<double>& growth,
                                         const std::vector<double>& rate, double seed) {
  const std::vector<double> cum = cumulative_trapezoid(times, growth);
  std::vector<double> integrand(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) integrand[i] = std::exp(-cum[i]) * rate[i];
  const std::vector<double> inner = cumulative_trapezoid(times, integrand);
  std::vector<double> env(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) env[i] = std::exp(cum[i]) * (seed + inner[i]);
  return env;
}

}  // namespace

std::vector<double> linf_envelope(const std::vector<double>& times,
                                  const std::vector<double>& c2, const std::vector<double>& c3,
                                  double u0_linf) {
  return exponential_envelope(times, c2, c3, u0_linf);
}

std::vector<double> tv_envelope(const std::vector<double>& times, const std::vector<double>& c4,
                                const std::vector<double>& c5, double tv0, double epsilon,
                                const std::vector<double>& ricci_linf) {
  std::vector<double> env = exponential_envelope(times, c4, c5, tv0);
  if (epsilon > 0.0) {
    const std::vector<double> ric = cumulative_trapezoid(times, ricci_linf);
    for (std::size_t i = 0; i < env.size(); ++i) env[i] *= std::exp(epsilon * ric[i]);
  }
  return env;
}

namespace {

// Largest |eigenvalue| of the Ricci form relative to g over cell centers.
double ricci_sup(const Grid& grid, const MetricField& metric, double t) {
  if (grid.dim() == 1) return 0.0;
  double sup = 0.0;
  for (std::size_t k = 0; k < grid.num_cells(); ++k) {
    const ChartPoint p = grid.cell_center(k, t);
    const Mat2 ric = metric.ricci(p);
    const auto eig = pencil_eigenvalues(ric, metric.metric(p), 2);
    sup = std::max(sup, std::max(std::abs(eig[0]), std::abs(eig[1])));
  }
  return sup;
}

}  // namespace

ConstantsSeries estimate_constants(const Grid& grid, const MetricField& metric,
                                   const FluxField& flux, const std::vector<double>& output_times,
                                   int subsamples, double u0_linf, double tv0, double epsilon) {
  if (subsamples < 1) throw ConfigError("envelope_subsamples must be >= 1");
  ConstantsSeries cs;

  // Quadrature lattice: every output interval refined `subsamples` times.
  std::vector<double> nodes;
  nodes.push_back(0.0);
  for (double t : output_times) {
    if (t > nodes.back()) nodes.push_back(t);
  }
  cs.times.push_back(0.0);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    for (int q = 1; q <= subsamples; ++q) {
      cs.times.push_back(nodes[i - 1] +
                         (nodes[i] - nodes[i - 1]) * static_cast<double>(q) / subsamples);
    }
  }
  const std::size_t count = cs.times.size();

  const bool frozen = !metric.time_dependent() && !flux.time_dependent();
  const int resolution = grid.n();

  // u_max solves a monotone fixed point: the constants depend on the range
  // |u| <= u_max, and u_max is the max of the envelope they produce.
  double u_hat = u0_linf;
  std::vector<CConstants> samples;
  for (int iter = 0; iter < 3; ++iter) {
    samples.assign(frozen ? 1 : count, CConstants{});
    if (frozen) {
      samples[0] = c_constants_sample(flux, metric, 0.0, u_hat, resolution);
    } else {
      parallel_for(count, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          samples[i] = c_constants_sample(flux, metric, cs.times[i], u_hat, resolution);
        }
      });
    }
    cs.c2.assign(count, 0.0);
    cs.c3.assign(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
      const CConstants& c = samples[frozen ? 0 : i];
      cs.c2[i] = c.c2;
      cs.c3[i] = c.c3;
    }
    cs.linf_lattice = linf_envelope(cs.times, cs.c2, cs.c3, u0_linf);
    double next = u0_linf;
    for (double v : cs.linf_lattice) next = std::max(next, v);
    if (next == u_hat) break;
    u_hat = next;
  }
  cs.u_max = u_hat;

  cs.c4.assign(count, 0.0);
  cs.c5.assign(count, 0.0);
  cs.ricci.assign(count, 0.0);
  cs.c6 = 0.0;
  cs.c7 = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const CConstants& c = samples[frozen ? 0 : i];
    cs.c4[i] = c.c4;
    cs.c5[i] = c.c5;
    cs.c6 = std::max(cs.c6, c.c6);
    cs.c7 = std::max(cs.c7, c.c7);
  }
  if (epsilon > 0.0) {
    if (!metric.time_dependent()) {
      const double sup = ricci_sup(grid, metric, 0.0);
      std::fill(cs.ricci.begin(), cs.ricci.end(), sup);
    } else {
      parallel_for(count, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) cs.ricci[i] = ricci_sup(grid, metric, cs.times[i]);
      });
    }
  }
  cs.tv_lattice = tv_envelope(cs.times, cs.c4, cs.c5, tv0, epsilon, cs.ricci);
  cs.tv_max = tv0;
  for (double v : cs.tv_lattice) cs.tv_max = std::max(cs.tv_max, v);
  cs.sample0 = samples[0];
  return cs;
}

double series_value_at(const ConstantsSeries& series, const std::vector<double>& values,
                       double t) {
  const auto it = std::lower_bound(series.times.begin(), series.times.end(), t - 1e-13);
  if (it == series.times.end() || std::abs(*it - t) > 1e-12 * std::max(1.0, std::abs(t))) {
    throw ConfigError("requested time is not a lattice node");
  }
  return values[static_cast<std::size_t>(it - series.times.begin())];
}

std::vector<double> entropy_k_grid(double u_max, int count) {
  std::vector<double> ks(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    ks[static_cast<std::size_t>(i)] = u_max * (2.0 * i / (count - 1) - 1.0);
  }
  return ks;
}

EntropyAuditor::EntropyAuditor(std::vector<double> ks)
    : ks_(std::move(ks)),
      max_residual_(-std::numeric_limits<double>::infinity()),
      interval_max_(-std::numeric_limits<double>::infinity()) {}

double EntropyAuditor::take_interval_max() {
  const double v = interval_max_;
  interval_max_ = -std::numeric_limits<double>::infinity();
  return v;
}

void EntropyAuditor::on_step(const StepRecord& rec) {
  const Grid& grid = *rec.grid;
  const FluxProfile& profile = rec.flux->profile();
  const std::size_t cells = rec.u0.size();
  const std::size_t faces = rec.face_coeff.size();
  const double inv_dt = 1.0 / rec.dt;
  const bool viscous = rec.epsilon > 0.0 && !rec.visc_normal.empty();

  divc_.assign(cells, 0.0);
  for (std::size_t f = 0; f < faces; ++f) {
    const Grid::FaceInfo info = grid.face(f);
    const double cm = rec.face_coeff[f] * rec.face_measure[f];
    divc_[info.left] += cm;
    divc_[info.right] -= cm;
  }

  double worst = -std::numeric_limits<double>::infinity();
  for (const double k : ks_) {
    const double phik = profile.value(k);
    qsum_.assign(cells, 0.0);
    for (std::size_t f = 0; f < faces; ++f) {
      const Grid::FaceInfo info = grid.face(f);
      const double al = rec.u0[info.left];
      const double ar = rec.u0[info.right];
      const double c = rec.face_coeff[f];
      double q = (numerical_flux(rec.scheme, profile, c, std::max(al, k), std::max(ar, k)) -
                  numerical_flux(rec.scheme, profile, c, std::min(al, k), std::min(ar, k))) *
                 rec.face_measure[f];
      if (viscous) {
        q -= rec.epsilon * rec.visc_normal[f] * (std::abs(ar - k) - std::abs(al - k));
      }
      qsum_[info.left] += q;
      qsum_[info.right] -= q;
    }
    for (std::size_t K = 0; K < cells; ++K) {
      const double eta1 = std::abs(rec.u1[K] - k);
      const double eta0 = std::abs(rec.u0[K] - k);
      const double sgn = rec.u1[K] > k ? 1.0 : (rec.u1[K] < k ? -1.0 : 0.0);
      const double residual =
          (eta1 * rec.volume1[K] - eta0 * rec.volume0[K]) * inv_dt + qsum_[K] +
          sgn * (k * (rec.volume1[K] - rec.volume0[K]) * inv_dt + phik * divc_[K]);
      worst = std::max(worst, residual);
    }
  }
  max_residual_ = std::max(max_residual_, worst);
  interval_max_ = std::max(interval_max_, worst);
}

namespace {

struct OdeState {
  Vec2 r;
  double u;
};

OdeState characteristic_rhs(const FluxField& flux, const MetricField& metric, const Vec2& r,
                            double t, double u) {
  const int dim = metric.dim();
  const ChartPoint p = dim == 1 ? chart_point(r[0], t) : chart_point(r[0], r[1], t);
  OdeState d;
  d.r = flux.du_value(p, u);
  d.u = -metric.lambda(p) * u - divx_at(flux, metric, p, u);
  return d;
}

// Classical fourth-order one-step integration of the characteristic system
// from (r0, u0(r0), 0) to time t_end. Returns the final position and value.
OdeState integrate_characteristic(const FluxField& flux, const MetricField& metric, Vec2 r,
                                  double u, double t_end, int steps) {
  const double dt = t_end / steps;
  double t = 0.0;
  for (int s = 0; s < steps; ++s) {
    const OdeState k1 = characteristic_rhs(flux, metric, r, t, u);
    const OdeState k2 = characteristic_rhs(
        flux, metric, {r[0] + 0.5 * dt * k1.r[0], r[1] + 0.5 * dt * k1.r[1]}, t + 0.5 * dt,
        u + 0.5 * dt * k1.u);
    const OdeState k3 = characteristic_rhs(
        flux, metric, {r[0] + 0.5 * dt * k2.r[0], r[1] + 0.5 * dt * k2.r[1]}, t + 0.5 * dt,
        u + 0.5 * dt * k2.u);
    const OdeState k4 = characteristic_rhs(
        flux, metric, {r[0] + dt * k3.r[0], r[1] + dt * k3.r[1]}, t + dt, u + dt * k3.u);
    r[0] += dt / 6.0 * (k1.r[0] + 2.0 * k2.r[0] + 2.0 * k3.r[0] + k4.r[0]);
    r[1] += dt / 6.0 * (k1.r[1] + 2.0 * k2.r[1] + 2.0 * k3.r[1] + k4.r[1]);
    u += dt / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
    t += dt;
  }
  return {r, u};
}

}  // namespace

namespace {

// Reversed position flow dy/ds = -d/du f(y, t_end - s, .). Only valid when
// the characteristic speed does not depend on u (linear or zero profile),
// where it finds the foot point without any fixed-point iteration and in
// particular survives strongly expanding backward flows.
Vec2 backward_foot(const FluxField& flux, const MetricField& metric, Vec2 r, double t_end,
                   int steps) {
  const int dim = metric.dim();
  const auto rhs = [&](const Vec2& y, double s) {
    const Vec2 w = {wrap01(y[0]), dim == 2 ? wrap01(y[1]) : 0.0};
    const ChartPoint q = dim == 1 ? chart_point(w[0], t_end - s) : chart_point(w[0], w[1], t_end - s);
    const Vec2 v = flux.du_value(q, 0.0);
    return Vec2{-v[0], -v[1]};
  };
  const double ds = t_end / steps;
  double s = 0.0;
  for (int i = 0; i < steps; ++i) {
    const Vec2 k1 = rhs(r, s);
    const Vec2 k2 = rhs({r[0] + 0.5 * ds * k1[0], r[1] + 0.5 * ds * k1[1]}, s + 0.5 * ds);
    const Vec2 k3 = rhs({r[0] + 0.5 * ds * k2[0], r[1] + 0.5 * ds * k2[1]}, s + 0.5 * ds);
    const Vec2 k4 = rhs({r[0] + ds * k3[0], r[1] + ds * k3[1]}, s + ds);
    r[0] += ds / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    r[1] += ds / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    s += ds;
  }
  return {wrap01(r[0]), dim == 2 ? wrap01(r[1]) : 0.0};
}

}  // namespace

double characteristics_oracle(const std::function<double(const Vec2&)>& u0,
                              const FluxField& flux, const MetricField& metric,
                              const ChartPoint& p, double t_end, int ode_steps) {
  constexpr int kMaxIters = 100;
  constexpr double kTol = 1e-10;
  const int dim = metric.dim();
  if (flux.is_zero() || flux.profile().kind() == ProfileKind::Linear) {
    const Vec2 foot = backward_foot(flux, metric, p.r, t_end, ode_steps);
    return integrate_characteristic(flux, metric, foot, u0(foot), t_end, ode_steps).u;
  }
  Vec2 foot = p.r;
  double value = 0.0;
  for (int iter = 0; iter < kMaxIters; ++iter) {
    const Vec2 wrapped = {wrap01(foot[0]), dim == 2 ? wrap01(foot[1]) : 0.0};
    const OdeState end =
        integrate_characteristic(flux, metric, wrapped, u0(wrapped), t_end, ode_steps);
    double err = 0.0;
    Vec2 miss = {0.0, 0.0};
    for (int i = 0; i < dim; ++i) {
      miss[static_cast<std::size_t>(i)] =
          wrap_diff(end.r[static_cast<std::size_t>(i)], p.r[static_cast<std::size_t>(i)]);
      err = std::max(err, std::abs(miss[static_cast<std::size_t>(i)]));
    }
    value = end.u;
    if (err <= kTol) return value;
    for (int i = 0; i < dim; ++i) {
      foot[static_cast<std::size_t>(i)] -= miss[static_cast<std::size_t>(i)];
    }
  }
  throw OracleError("characteristic foot point iteration did not converge");
}

std::vector<double> oracle_cell_averages(const std::function<double(const Vec2&)>& u0,
                                         const FluxField& flux, const MetricField& metric,
                                         const Grid& grid, double t, int ode_steps,
                                         int quad_order) {
  const std::vector<double> masses = integrate_cells(
      grid, metric, t,
      [&](const ChartPoint& p) {
        return characteristics_oracle(u0, flux, metric, p, t, ode_steps);
      },
      quad_order);
  const GridGeometry geo = compute_geometry(grid, metric, t, quad_order);
  std::vector<double> avg(masses.size());
  for (std::size_t k = 0; k < masses.size(); ++k) avg[k] = masses[k] / geo.volume[k];
  return avg;
}

std::vector<EocRow> eoc_table(const std::vector<int>& resolutions,
                              const std::vector<double>& errors) {
  if (resolutions.size() != errors.size()) {
    throw ConfigError("eoc_table needs one error per resolution");
  }
  constexpr double kRoundoff = 1e-12;
  std::vector<EocRow> rows(resolutions.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].n = resolutions[i];
    rows[i].error = errors[i];
    rows[i].exact = errors[i] <= kRoundoff;
    if (i > 0 && !rows[i].exact && !rows[i - 1].exact && errors[i] > 0.0 &&
        resolutions[i] > resolutions[i - 1]) {
      rows[i].order = std::log(errors[i - 1] / errors[i]) /
                      std::log(static_cast<double>(resolutions[i]) / resolutions[i - 1]);
      rows[i].has_order = true;
    }
  }
  return rows;
}

LipschitzResult lipschitz_check(const std::vector<Snapshot>& snapshots, double c6, double c7,
                                double tv_max) {
  LipschitzResult res;
  res.bound = c6 + c7 * tv_max;
  for (std::size_t a = 0; a < snapshots.size(); ++a) {
    for (std::size_t b = a + 1; b < snapshots.size(); ++b) {
      const Snapshot& s = snapshots[a];
      const Snapshot& t = snapshots[b];
      if (!(t.t > s.t)) continue;
      // u(t) V(t) is the solver's primal mass; using it directly keeps the
      // quotient exactly zero for fluxless runs, where the bound is zero too.
      double diff = 0.0;
      for (std::size_t k = 0; k < s.cell_mass.size(); ++k) {
        diff += std::abs(t.cell_mass[k] - s.cell_mass[k]);
      }
      res.max_quotient = std::max(res.max_quotient, diff / (t.t - s.t));
    }
  }
  return res;
}

}  // namespace mclaw
