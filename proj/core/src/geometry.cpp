#include "mclaw/geometry.hpp"

#include <cmath>

namespace mclaw {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSpaceStep = 1.0e-5;   // chart-space central differences
constexpr double kTimeStep = 1.0e-6;    // time central differences
constexpr double kRicciStep = 1.0e-4;   // outer step when differencing Christoffels

ChartPoint shifted(ChartPoint p, int axis, double dr) {
  p.r[static_cast<std::size_t>(axis)] += dr;
  return p;
}

ChartPoint at_time(ChartPoint p, double dt) {
  p.t += dt;
  return p;
}

void check_spd(const Mat2& g, int dim, const ChartPoint& p) {
  const double det = mat_det(g, dim);
  if (!(g[0][0] > 0.0) || !(det > 0.0) || !std::isfinite(det)) {
    throw GeometryError("metric is not positive definite at r=(" +
                        std::to_string(p.r[0]) + "," + std::to_string(p.r[1]) +
                        "), t=" + std::to_string(p.t));
  }
}

}  // namespace

MetricField MetricField::flat(int dim) {
  if (dim != 1 && dim != 2) throw GeometryError("metric dimension must be 1 or 2");
  MetricField m;
  m.dim_ = dim;
  m.time_dependent_ = false;
  m.metric_fn_ = [dim](const ChartPoint&) { return mat_identity(dim); };
  m.dt_metric_fn_ = [](const ChartPoint&) { return mat_zero(); };
  m.lambda_fn_ = [](const ChartPoint&) { return 0.0; };
  return m;
}

MetricField MetricField::dilation(int dim, double a0, double rate) {
  if (dim != 1 && dim != 2) throw GeometryError("metric dimension must be 1 or 2");
  if (!(a0 > 0.0)) throw GeometryError("dilation scale a0 must be positive");
  MetricField m;
  m.dim_ = dim;
  m.time_dependent_ = rate != 0.0;
  m.metric_fn_ = [dim, a0, rate](const ChartPoint& p) {
    const double a = a0 * std::exp(rate * p.t);
    return mat_scaled(mat_identity(dim), a * a);
  };
  m.dt_metric_fn_ = [dim, a0, rate](const ChartPoint& p) {
    const double a = a0 * std::exp(rate * p.t);
    return mat_scaled(mat_identity(dim), 2.0 * rate * a * a);
  };
  m.lambda_fn_ = [dim, rate](const ChartPoint&) { return dim * rate; };
  return m;
}

MetricField MetricField::expanding_circle(double R0, double rate) {
  if (!(R0 > 0.0)) throw GeometryError("expanding_circle radius R0 must be positive");
  MetricField m;
  m.dim_ = 1;
  m.time_dependent_ = rate != 0.0;
  m.metric_fn_ = [R0, rate](const ChartPoint& p) {
    const double R = R0 + rate * p.t;
    Mat2 g = mat_zero();
    g[0][0] = 4.0 * kPi * kPi * R * R;
    return g;
  };
  m.dt_metric_fn_ = [R0, rate](const ChartPoint& p) {
    const double R = R0 + rate * p.t;
    Mat2 dg = mat_zero();
    dg[0][0] = 8.0 * kPi * kPi * R * rate;
    return dg;
  };
  m.lambda_fn_ = [R0, rate](const ChartPoint& p) {
    const double R = R0 + rate * p.t;
    if (!(R > 0.0)) throw GeometryError("expanding_circle radius reached zero");
    return rate / R;
  };
  return m;
}

MetricField MetricField::wavy_circle(double amplitude) {
  if (!(std::abs(amplitude) < 2.0)) {
    throw GeometryError("wavy_circle amplitude must satisfy |amplitude| < 2");
  }
  MetricField m;
  m.dim_ = 1;
  m.time_dependent_ = false;
  m.metric_fn_ = [amplitude](const ChartPoint& p) {
    const double s = 2.0 + amplitude * std::sin(2.0 * kPi * p.r[0]);
    Mat2 g = mat_zero();
    g[0][0] = s * s;
    return g;
  };
  m.dt_metric_fn_ = [](const ChartPoint&) { return mat_zero(); };
  m.lambda_fn_ = [](const ChartPoint&) { return 0.0; };
  return m;
}

MetricField MetricField::torus_of_revolution(double major_radius, double minor_radius) {
  if (!(minor_radius > 0.0) || !(major_radius > minor_radius)) {
    throw GeometryError("torus_of_revolution requires R_major > r_minor > 0");
  }
  MetricField m;
  m.dim_ = 2;
  m.time_dependent_ = false;
  m.metric_fn_ = [major_radius, minor_radius](const ChartPoint& p) {
    const double rho = major_radius + minor_radius * std::cos(2.0 * kPi * p.r[1]);
    Mat2 g = mat_zero();
    g[0][0] = 4.0 * kPi * kPi * rho * rho;
    g[1][1] = 4.0 * kPi * kPi * minor_radius * minor_radius;
    return g;
  };
  m.dt_metric_fn_ = [](const ChartPoint&) { return mat_zero(); };
  m.lambda_fn_ = [](const ChartPoint&) { return 0.0; };
  return m;
}

MetricField MetricField::custom_embedding(int dim, std::vector<Expression> components) {
  if (dim != 1 && dim != 2) throw GeometryError("metric dimension must be 1 or 2");
  if (components.size() < static_cast<std::size_t>(dim)) {
    throw GeometryError("custom_embedding needs at least dim component expressions");
  }
  bool uses_time = false;
  for (const auto& c : components) uses_time = uses_time || c.uses("t");

  MetricField m;
  m.dim_ = dim;
  m.time_dependent_ = uses_time;
  m.metric_fn_ = [dim, components = std::move(components)](const ChartPoint& p) {
    Mat2 g = mat_zero();
    for (const auto& comp : components) {
      Vec2 d = {0.0, 0.0};
      for (int i = 0; i < dim; ++i) {
        VarEnv lo, hi;
        lo.t = hi.t = p.t;
        lo.r1 = hi.r1 = p.r[0];
        lo.r2 = hi.r2 = p.r[1];
        if (i == 0) {
          lo.r1 -= kSpaceStep;
          hi.r1 += kSpaceStep;
        } else {
          lo.r2 -= kSpaceStep;
          hi.r2 += kSpaceStep;
        }
        d[static_cast<std::size_t>(i)] =
            (comp.eval(hi) - comp.eval(lo)) / (2.0 * kSpaceStep);
      }
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
              d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(j)];
        }
      }
    }
    return g;
  };
  return m;
}

Mat2 MetricField::metric(const ChartPoint& p) const {
  Mat2 g = metric_fn_(p);
  check_spd(g, dim_, p);
  return g;
}

MetricSample MetricField::sample(const ChartPoint& p) const {
  MetricSample s;
  s.g = metric(p);
  s.g_inv = mat_inverse(s.g, dim_);
  s.sqrt_det = std::sqrt(mat_det(s.g, dim_));
  return s;
}

double MetricField::sqrt_det(const ChartPoint& p) const {
  return std::sqrt(mat_det(metric(p), dim_));
}

Mat2 MetricField::dt_metric(const ChartPoint& p) const {
  if (dt_metric_fn_) return dt_metric_fn_(p);
  const Mat2 hi = metric_fn_(at_time(p, kTimeStep));
  const Mat2 lo = metric_fn_(at_time(p, -kTimeStep));
  Mat2 dg = mat_zero();
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      dg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          (hi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
           lo[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) /
          (2.0 * kTimeStep);
    }
  }
  return dg;
}

double MetricField::lambda(const ChartPoint& p) const {
  if (lambda_fn_) return lambda_fn_(p);
  const MetricSample s = sample(p);
  const Mat2 dg = dt_metric(p);
  double trace = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      trace += s.g_inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
               dg[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
  }
  return 0.5 * trace;
}

Vec2 MetricField::grad_lambda(const ChartPoint& p) const {
  Vec2 grad = {0.0, 0.0};
  for (int i = 0; i < dim_; ++i) {
    const double hi = lambda(shifted(p, i, kSpaceStep));
    const double lo = lambda(shifted(p, i, -kSpaceStep));
    grad[static_cast<std::size_t>(i)] = (hi - lo) / (2.0 * kSpaceStep);
  }
  return grad;
}

Vec2 MetricField::dlog_sqrt_det(const ChartPoint& p) const {
  Vec2 grad = {0.0, 0.0};
  for (int i = 0; i < dim_; ++i) {
    const double hi = std::log(sqrt_det(shifted(p, i, kSpaceStep)));
    const double lo = std::log(sqrt_det(shifted(p, i, -kSpaceStep)));
    grad[static_cast<std::size_t>(i)] = (hi - lo) / (2.0 * kSpaceStep);
  }
  return grad;
}

Christoffel2 MetricField::christoffel(const ChartPoint& p) const {
  // Gamma^k_ij = (1/2) g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
  const MetricSample s = sample(p);
  std::array<Mat2, 2> dg = {mat_zero(), mat_zero()};  // dg[l] = d_l g
  for (int l = 0; l < dim_; ++l) {
    const Mat2 hi = metric_fn_(shifted(p, l, kSpaceStep));
    const Mat2 lo = metric_fn_(shifted(p, l, -kSpaceStep));
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) {
        dg[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)]
          [static_cast<std::size_t>(j)] =
            (hi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
             lo[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) /
            (2.0 * kSpaceStep);
      }
    }
  }
  Christoffel2 gamma = {mat_zero(), mat_zero()};
  for (int k = 0; k < dim_; ++k) {
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) {
        double sum = 0.0;
        for (int l = 0; l < dim_; ++l) {
          const double term =
              dg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                [static_cast<std::size_t>(l)] +
              dg[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]
                [static_cast<std::size_t>(l)] -
              dg[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)]
                [static_cast<std::size_t>(j)];
          sum += s.g_inv[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] * term;
        }
        gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
             [static_cast<std::size_t>(j)] = 0.5 * sum;
      }
    }
  }
  return gamma;
}

Mat2 MetricField::ricci(const ChartPoint& p) const {
  if (dim_ == 1) return mat_zero();
  // R_ij = d_k Gamma^k_ij - d_j Gamma^k_ik + Gamma^k_kl Gamma^l_ij
  //        - Gamma^k_jl Gamma^l_ik
  const Christoffel2 gamma = christoffel(p);
  std::array<Christoffel2, 2> dgamma;  // dgamma[m] = d_m Gamma
  for (int m = 0; m < dim_; ++m) {
    const Christoffel2 hi = christoffel(shifted(p, m, kRicciStep));
    const Christoffel2 lo = christoffel(shifted(p, m, -kRicciStep));
    for (int k = 0; k < dim_; ++k) {
      for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) {
          dgamma[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)]
                [static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              (hi[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
                 [static_cast<std::size_t>(j)] -
               lo[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
                 [static_cast<std::size_t>(j)]) /
              (2.0 * kRicciStep);
        }
      }
    }
  }
  auto G = [&](int k, int i, int j) {
    return gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
                [static_cast<std::size_t>(j)];
  };
  auto dG = [&](int m, int k, int i, int j) {
    return dgamma[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)]
                 [static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };
  Mat2 ric = mat_zero();
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      double sum = 0.0;
      for (int k = 0; k < dim_; ++k) {
        sum += dG(k, k, i, j) - dG(j, k, i, k);
        for (int l = 0; l < dim_; ++l) {
          sum += G(k, k, l) * G(l, i, j) - G(k, j, l) * G(l, i, k);
        }
      }
      ric[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sum;
    }
  }
  return ric;
}

}  // namespace mclaw
