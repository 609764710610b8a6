#include "mclaw/flux.hpp"

#include <cmath>
#include <limits>

#include "mclaw/util.hpp"

namespace mclaw {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kProfileStep = 1.0e-6;  // derivative of a custom profile
constexpr double kSpaceStep = 1.0e-5;    // chart derivatives of the vector part

// Signed integral of |phi'| from a to b by composite Simpson on 64 panels.
double signed_abs_derivative_integral(const FluxProfile& profile, double a, double b) {
  const double sign = b >= a ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  constexpr int kPanels = 64;
  const double dx = (hi - lo) / kPanels;
  double sum = std::abs(profile.derivative(lo)) + std::abs(profile.derivative(hi));
  for (int i = 1; i < kPanels; ++i) {
    const double w = (i % 2 == 1) ? 4.0 : 2.0;
    sum += w * std::abs(profile.derivative(lo + i * dx));
  }
  return sign * sum * dx / 3.0;
}

}  // namespace

FluxProfile FluxProfile::linear() {
  FluxProfile p;
  p.kind_ = ProfileKind::Linear;
  return p;
}

FluxProfile FluxProfile::burgers() {
  FluxProfile p;
  p.kind_ = ProfileKind::Burgers;
  return p;
}

FluxProfile FluxProfile::custom(Expression expr) {
  FluxProfile p;
  p.kind_ = ProfileKind::Custom;
  p.expr_ = std::move(expr);
  return p;
}

double FluxProfile::value(double u) const {
  switch (kind_) {
    case ProfileKind::Linear:
      return u;
    case ProfileKind::Burgers:
      return 0.5 * u * u;
    case ProfileKind::Custom: {
      VarEnv env;
      env.u = u;
      return expr_.eval(env);
    }
  }
  return 0.0;
}

double FluxProfile::derivative(double u) const {
  switch (kind_) {
    case ProfileKind::Linear:
      return 1.0;
    case ProfileKind::Burgers:
      return u;
    case ProfileKind::Custom: {
      VarEnv hi, lo;
      hi.u = u + kProfileStep;
      lo.u = u - kProfileStep;
      return (expr_.eval(hi) - expr_.eval(lo)) / (2.0 * kProfileStep);
    }
  }
  return 0.0;
}

FluxField FluxField::zero(int dim) {
  FluxField f;
  f.dim_ = dim;
  f.zero_ = true;
  f.profile_ = FluxProfile::linear();
  f.vector_fn_ = [](const ChartPoint&) { return Vec2{0.0, 0.0}; };
  return f;
}

FluxField FluxField::burgers(int dim, Vec2 direction) {
  FluxField f;
  f.dim_ = dim;
  f.zero_ = false;
  f.profile_ = FluxProfile::burgers();
  f.vector_fn_ = [direction](const ChartPoint&) { return direction; };
  return f;
}

FluxField FluxField::linear_advection(int dim, Vec2 speed) {
  FluxField f;
  f.dim_ = dim;
  f.zero_ = false;
  f.profile_ = FluxProfile::linear();
  f.vector_fn_ = [speed](const ChartPoint&) { return speed; };
  return f;
}

FluxField FluxField::killing_rotation(double omega, FluxProfile profile) {
  FluxField f;
  f.dim_ = 2;
  f.zero_ = false;
  f.profile_ = std::move(profile);
  f.vector_fn_ = [omega](const ChartPoint&) { return Vec2{omega, 0.0}; };
  return f;
}

FluxField FluxField::shear(double amplitude, FluxProfile profile) {
  FluxField f;
  f.dim_ = 2;
  f.zero_ = false;
  f.profile_ = std::move(profile);
  f.vector_fn_ = [amplitude](const ChartPoint& p) {
    return Vec2{amplitude * std::sin(2.0 * kPi * p.r[1]), 0.0};
  };
  return f;
}

FluxField FluxField::compressible(int dim, std::vector<Expression> field,
                                  FluxProfile profile) {
  if (field.size() != static_cast<std::size_t>(dim)) {
    throw ConfigError("compressible flux needs one field expression per dimension");
  }
  bool uses_time = false;
  for (const auto& e : field) uses_time = uses_time || e.uses("t");
  FluxField f;
  f.dim_ = dim;
  f.zero_ = false;
  f.time_dependent_ = uses_time;
  f.profile_ = std::move(profile);
  f.vector_fn_ = [dim, field = std::move(field)](const ChartPoint& p) {
    VarEnv env;
    env.r1 = p.r[0];
    env.r2 = p.r[1];
    env.t = p.t;
    Vec2 v = {0.0, 0.0};
    for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] = field[static_cast<std::size_t>(i)].eval(env);
    return v;
  };
  return f;
}

Vec2 FluxField::vector_part(const ChartPoint& p) const { return vector_fn_(p); }

Vec2 FluxField::value(const ChartPoint& p, double u) const {
  const Vec2 v = vector_fn_(p);
  const double s = profile_.value(u);
  return {v[0] * s, v[1] * s};
}

Vec2 FluxField::du_value(const ChartPoint& p, double u) const {
  const Vec2 v = vector_fn_(p);
  const double s = profile_.derivative(u);
  return {v[0] * s, v[1] * s};
}

double FluxField::vector_divergence(const ChartPoint& p, const MetricField& metric) const {
  if (zero_) return 0.0;
  double div = 0.0;
  for (int i = 0; i < dim_; ++i) {
    ChartPoint hi = p;
    ChartPoint lo = p;
    hi.r[static_cast<std::size_t>(i)] += kSpaceStep;
    lo.r[static_cast<std::size_t>(i)] -= kSpaceStep;
    div += (vector_fn_(hi)[static_cast<std::size_t>(i)] -
            vector_fn_(lo)[static_cast<std::size_t>(i)]) /
           (2.0 * kSpaceStep);
  }
  const Vec2 v = vector_fn_(p);
  const Vec2 dlog = metric.dlog_sqrt_det(p);
  for (int i = 0; i < dim_; ++i) {
    div += v[static_cast<std::size_t>(i)] * dlog[static_cast<std::size_t>(i)];
  }
  return div;
}

double divx_at(const FluxField& f, const MetricField& metric, const ChartPoint& p, double u) {
  if (f.is_zero()) return 0.0;
  return f.profile().value(u) * f.vector_divergence(p, metric);
}

namespace {

// Symmetrized covariant differential of the vector part alone (profile
// derivative factored out): sym(nabla W) with W = g V.
Mat2 lowered_deformation(const FluxField& f, const MetricField& metric, const ChartPoint& p) {
  const int dim = metric.dim();
  // Lowered vector part W_j = g_jk V^k as a function of the chart position.
  const auto lowered = [&](double r1, double r2) {
    const ChartPoint q = dim == 1 ? chart_point(r1, p.t) : chart_point(r1, r2, p.t);
    const Mat2 g = metric.metric(q);
    const Vec2 v = f.vector_part(q);
    Vec2 w = {0.0, 0.0};
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        w[static_cast<std::size_t>(j)] += g[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(k)];
    return w;
  };
  Mat2 dW = mat_zero();  // dW[i][j] = d_i W_j
  for (int i = 0; i < dim; ++i) {
    Vec2 hi = p.r;
    Vec2 lo = p.r;
    hi[static_cast<std::size_t>(i)] += kSpaceStep;
    lo[static_cast<std::size_t>(i)] -= kSpaceStep;
    const Vec2 wh = lowered(hi[0], hi[1]);
    const Vec2 wl = lowered(lo[0], lo[1]);
    for (int j = 0; j < dim; ++j) {
      dW[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          (wh[static_cast<std::size_t>(j)] - wl[static_cast<std::size_t>(j)]) /
          (2.0 * kSpaceStep);
    }
  }
  const Christoffel2 gamma = metric.christoffel(p);
  const Vec2 w = lowered(p.r[0], p.r[1]);
  Mat2 s = mat_zero();
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      // nabla_i W_j = d_i W_j - Gamma^k_ij W_k; the Christoffel part is
      // already symmetric in (i, j), so only the plain derivatives need
      // symmetrizing.
      double nij = 0.5 * (dW[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                          dW[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
      for (int k = 0; k < dim; ++k) {
        nij -= gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
               w[static_cast<std::size_t>(k)];
      }
      s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = nij;
    }
  }
  return s;
}

}  // namespace

Mat2 flux_deformation(const FluxField& f, const MetricField& metric, const ChartPoint& p,
                      double u) {
  if (f.is_zero()) return mat_zero();
  return mat_scaled(lowered_deformation(f, metric, p), f.profile().derivative(u));
}

double killing_defect(const FluxField& f, const MetricField& metric, const ChartPoint& p,
                      double u) {
  if (f.is_zero()) return 0.0;
  const Mat2 s = flux_deformation(f, metric, p, u);
  const Mat2 g = metric.metric(p);
  const auto eig = pencil_eigenvalues(s, g, metric.dim());
  return std::max(std::abs(eig[0]), std::abs(eig[1]));
}

namespace {

constexpr int kUSamples = 65;       // profile sampling across [-u_max, u_max]
constexpr double kOuterStep = 1.0e-4;  // outer step for gradients of divergences

struct ProfileStats {
  double abs_phi_max = 0.0;   // max |phi|
  double abs_dphi_max = 0.0;  // max |phi'|
  double dphi_min = 0.0;
  double dphi_max = 0.0;
  double abs_phi0 = 0.0;  // |phi(0)|
};

ProfileStats profile_stats(const FluxProfile& profile, double u_max) {
  ProfileStats st;
  st.abs_phi0 = std::abs(profile.value(0.0));
  st.dphi_min = profile.derivative(-u_max);
  st.dphi_max = st.dphi_min;
  for (int i = 0; i < kUSamples; ++i) {
    const double u = u_max * (2.0 * i / (kUSamples - 1) - 1.0);
    const double phi = profile.value(u);
    const double dphi = profile.derivative(u);
    st.abs_phi_max = std::max(st.abs_phi_max, std::abs(phi));
    st.abs_dphi_max = std::max(st.abs_dphi_max, std::abs(dphi));
    st.dphi_min = std::min(st.dphi_min, dphi);
    st.dphi_max = std::max(st.dphi_max, dphi);
  }
  return st;
}

}  // namespace

CConstants c_constants_sample(const FluxField& f, const MetricField& metric, double t,
                              double u_max, int resolution) {
  const int dim = metric.dim();
  const double h = 1.0 / resolution;
  const bool moving = metric.time_dependent();
  const bool with_flux = !f.is_zero();
  const ProfileStats st = profile_stats(f.profile(), u_max);

  double inf_lambda = 0.0;
  // Plain infimum over x and u of phi'(u) * div V; zero when f = 0.
  double inf_du_divx = with_flux ? std::numeric_limits<double>::infinity() : 0.0;
  double sup_divv = 0.0;  // sup |div V|
  // Ball infima: X = 0 is admissible, so these never exceed zero.
  double inf_dtg = 0.0;
  double inf_deform = 0.0;
  double l1_grad_lambda = 0.0;
  double l1_grad_divx = 0.0;  // integral of sup_u |grad div^x f|_g
  double l1_divx = 0.0;       // integral of sup_u |div^x f|
  double sup_du_f = 0.0;      // sup |d/du f|_g
  bool first = true;

  const std::size_t count = static_cast<std::size_t>(resolution) *
                            (dim == 2 ? static_cast<std::size_t>(resolution) : 1);
  for (std::size_t k = 0; k < count; ++k) {
    const double r1 = (static_cast<double>(k % static_cast<std::size_t>(resolution)) + 0.5) * h;
    const double r2 = (static_cast<double>(k / static_cast<std::size_t>(resolution)) + 0.5) * h;
    const ChartPoint p = dim == 1 ? chart_point(r1, t) : chart_point(r1, r2, t);
    const MetricSample ms = metric.sample(p);
    const double weight = ms.sqrt_det * (dim == 1 ? h : h * h);

    const double lam = metric.lambda(p);
    inf_lambda = first ? lam : std::min(inf_lambda, lam);

    const Vec2 dlam = metric.grad_lambda(p);
    l1_grad_lambda += std::sqrt(std::max(0.0, mat_form(ms.g_inv, dlam, dlam, dim))) * weight;

    if (moving) {
      const Mat2 dtg = metric.dt_metric(p);
      const auto eig = pencil_eigenvalues(dtg, ms.g, dim);
      inf_dtg = std::min(inf_dtg, std::min(0.0, eig[0]));
    }

    if (with_flux) {
      const double divv = f.vector_divergence(p, metric);
      sup_divv = std::max(sup_divv, std::abs(divv));
      inf_du_divx = std::min(inf_du_divx, std::min(st.dphi_min * divv, st.dphi_max * divv));

      Vec2 grad_divv = {0.0, 0.0};
      for (int i = 0; i < dim; ++i) {
        Vec2 hi = p.r;
        Vec2 lo = p.r;
        hi[static_cast<std::size_t>(i)] += kOuterStep;
        lo[static_cast<std::size_t>(i)] -= kOuterStep;
        const ChartPoint ph = dim == 1 ? chart_point(hi[0], t) : chart_point(hi[0], hi[1], t);
        const ChartPoint pl = dim == 1 ? chart_point(lo[0], t) : chart_point(lo[0], lo[1], t);
        grad_divv[static_cast<std::size_t>(i)] =
            (f.vector_divergence(ph, metric) - f.vector_divergence(pl, metric)) /
            (2.0 * kOuterStep);
      }
      l1_grad_divx +=
          st.abs_phi_max *
          std::sqrt(std::max(0.0, mat_form(ms.g_inv, grad_divv, grad_divv, dim))) * weight;
      l1_divx += st.abs_phi_max * std::abs(divv) * weight;

      const Vec2 v = f.vector_part(p);
      sup_du_f = std::max(
          sup_du_f, st.abs_dphi_max * std::sqrt(std::max(0.0, mat_form(ms.g, v, v, dim))));

      // The deformation scales linearly with phi'(u), so its extreme
      // eigenvalues over u come from the extremes of the sampled phi' range.
      const Mat2 s0 = lowered_deformation(f, metric, p);
      const auto eig = pencil_eigenvalues(s0, ms.g, dim);
      for (const double dphi : {st.dphi_min, st.dphi_max}) {
        inf_deform = std::min(inf_deform, std::min(dphi * eig[0], dphi * eig[1]));
      }
    }
    first = false;
  }

  CConstants c;
  c.c2 = -inf_lambda - inf_du_divx;
  c.c3 = st.abs_phi0 * sup_divv;
  c.c4 = -inf_dtg - inf_deform;
  c.c5 = u_max * l1_grad_lambda + l1_grad_divx;
  c.c6 = l1_divx;
  c.c7 = sup_du_f;
  c.resolution = resolution;
  c.u_samples = kUSamples;
  return c;
}

double numerical_flux(SchemeKind scheme, const FluxProfile& profile, double coeff,
                      double uL, double uR) {
  if (uL == uR) return coeff * profile.value(uL);
  if (scheme == SchemeKind::LocalLaxFriedrichs) {
    const double alpha = max_wave_speed(profile, coeff, std::min(uL, uR), std::max(uL, uR));
    return 0.5 * coeff * (profile.value(uL) + profile.value(uR)) -
           0.5 * alpha * (uR - uL);
  }
  switch (profile.kind()) {
    case ProfileKind::Linear:
      return coeff >= 0.0 ? coeff * uL : coeff * uR;
    case ProfileKind::Burgers: {
      const double ap = std::max(uL, 0.0);
      const double bm = std::min(uR, 0.0);
      const double am = std::min(uL, 0.0);
      const double bp = std::max(uR, 0.0);
      return coeff >= 0.0 ? 0.5 * coeff * (ap * ap + bm * bm)
                          : 0.5 * coeff * (am * am + bp * bp);
    }
    case ProfileKind::Custom: {
      const double central = 0.5 * coeff * (profile.value(uL) + profile.value(uR));
      const double spread =
          0.5 * std::abs(coeff) * signed_abs_derivative_integral(profile, uL, uR);
      return central - spread;
    }
  }
  return 0.0;
}

double max_wave_speed(const FluxProfile& profile, double coeff, double lo, double hi) {
  constexpr int kSamples = 17;
  double m = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double s = lo + (hi - lo) * static_cast<double>(i) / (kSamples - 1);
    m = std::max(m, std::abs(profile.derivative(s)));
  }
  return std::abs(coeff) * m;
}

}  // namespace mclaw
