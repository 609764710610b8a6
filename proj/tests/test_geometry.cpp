/// @file test_geometry.cpp
/// Metric families: tensor algebra invariants over random samples, closed
/// forms for the built-in families, and curvature against independent
/// references.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "mclaw/expression.hpp"
#include "mclaw/geometry.hpp"
#include "mclaw/util.hpp"

using namespace mclaw;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct NamedMetric {
  const char* name;
  MetricField field;
};

std::vector<NamedMetric> builtin_metrics() {
  std::vector<NamedMetric> out;
  out.push_back({"flat-1d", MetricField::flat(1)});
  out.push_back({"flat-2d", MetricField::flat(2)});
  out.push_back({"dilation", MetricField::dilation(2, 1.0, -1.0)});
  out.push_back({"expanding-circle", MetricField::expanding_circle(1.0, 1.0)});
  out.push_back({"wavy-circle", MetricField::wavy_circle(1.0)});
  out.push_back({"torus-of-revolution", MetricField::torus_of_revolution(2.0, 1.0)});
  return out;
}

ChartPoint random_point(const MetricField& m, std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> time(0.0, 0.5);
  if (m.dim() == 1) return chart_point(unit(rng), time(rng));
  return chart_point(unit(rng), unit(rng), time(rng));
}

// Centered finite difference of log sqrt(det g) in time.
double lambda_fd(const MetricField& m, const ChartPoint& p, double step = 1e-6) {
  const ChartPoint plus{p.r, p.t + step};
  const ChartPoint minus{p.r, p.t - step};
  return (std::log(m.sqrt_det(plus)) - std::log(m.sqrt_det(minus))) / (2.0 * step);
}

}  // namespace

// ============================================================================
// Closed forms per family
// ============================================================================

TEST_CASE("flat torus metric is the identity with unit volume density") {
  const MetricField m = MetricField::flat(2);
  const ChartPoint p = chart_point(0.3, 0.7, 0.2);
  const Mat2 g = m.metric(p);
  CHECK(g[0][0] == 1.0);
  CHECK(g[1][1] == 1.0);
  CHECK(g[0][1] == 0.0);
  CHECK(m.sqrt_det(p) == doctest::Approx(1.0));
  CHECK(m.lambda(p) == 0.0);
}

TEST_CASE("expanding circle pullback is g11 = 4 pi^2 (1+t)^2 with lambda = Rdot/R") {
  const MetricField m = MetricField::expanding_circle(1.0, 1.0);
  const ChartPoint p0 = chart_point(0.1, 0.0);
  const ChartPoint p1 = chart_point(0.9, 0.5);
  CHECK(m.metric(p0)[0][0] == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-12));
  CHECK(m.metric(p1)[0][0] == doctest::Approx(4.0 * kPi * kPi * 1.5 * 1.5).epsilon(1e-12));
  CHECK(m.lambda(p0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.lambda(p1) == doctest::Approx(1.0 / 1.5).epsilon(1e-12));
}

TEST_CASE("dilation metric at t=0 has unit volume and lambda = 2*rate") {
  const MetricField m = MetricField::dilation(2, 1.0, -1.0);
  const ChartPoint p = chart_point(0.4, 0.6, 0.0);
  const MetricSample s = m.sample(p);
  CHECK(s.sqrt_det == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.g_inv[0][0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.g_inv[1][1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.lambda(p) == doctest::Approx(-2.0).epsilon(1e-12));
  // Spatially constant metric: all Christoffel symbols vanish.
  const Christoffel2 gamma = m.christoffel(chart_point(0.2, 0.8, 0.3));
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(gamma[k][i][j]) <= 1e-10);
}

TEST_CASE("wavy circle Christoffel matches d1 g11 / (2 g11)") {
  const MetricField m = MetricField::wavy_circle(1.0);
  for (double r : {0.05, 0.3, 0.62, 0.9}) {
    const ChartPoint p = chart_point(r, 0.0);
    const double s = 2.0 + std::sin(2.0 * kPi * r);
    const double dg = 2.0 * s * 2.0 * kPi * std::cos(2.0 * kPi * r);
    const double expected = dg / (2.0 * s * s);
    CHECK(m.christoffel(p)[0][0][0] == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("custom embedding reproduces the expanding circle pullback") {
  std::vector<Expression> comps;
  comps.push_back(Expression::parse("(1 + t)*cos(2*pi*r1)"));
  comps.push_back(Expression::parse("(1 + t)*sin(2*pi*r1)"));
  const MetricField m = MetricField::custom_embedding(1, std::move(comps));
  const ChartPoint p = chart_point(0.37, 0.25);
  CHECK(m.metric(p)[0][0] == doctest::Approx(4.0 * kPi * kPi * 1.25 * 1.25).epsilon(1e-6));
  CHECK(m.lambda(p) == doctest::Approx(1.0 / 1.25).epsilon(1e-5));
}

// ============================================================================
// Random-sample invariants
// ============================================================================

TEST_CASE("metric samples are symmetric positive definite with exact inverses") {
  std::mt19937 rng(42);
  for (const NamedMetric& nm : builtin_metrics()) {
    CAPTURE(nm.name);
    for (int trial = 0; trial < 100; ++trial) {
      const ChartPoint p = random_point(nm.field, rng);
      const MetricSample s = nm.field.sample(p);
      const int dim = nm.field.dim();
      CHECK(s.g[0][1] == s.g[1][0]);
      CHECK(s.g[0][0] > 0.0);
      CHECK(mat_det(s.g, dim) > 0.0);
      CHECK(s.sqrt_det > 0.0);
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          double entry = 0.0;
          for (int k = 0; k < dim; ++k) entry += s.g[i][k] * s.g_inv[k][j];
          CHECK(std::abs(entry - (i == j ? 1.0 : 0.0)) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("lambda agrees with finite differences of log sqrt(det g)") {
  std::mt19937 rng(7);
  for (const NamedMetric& nm : builtin_metrics()) {
    CAPTURE(nm.name);
    for (int trial = 0; trial < 20; ++trial) {
      const ChartPoint p = random_point(nm.field, rng);
      const double analytic = nm.field.lambda(p);
      const double fd = lambda_fd(nm.field, p);
      CHECK(std::abs(analytic - fd) <= 1e-6 * std::max(1.0, std::abs(analytic)));
    }
  }
}

TEST_CASE("Christoffel symbols are symmetric in the lower indices") {
  std::mt19937 rng(11);
  for (const NamedMetric& nm : builtin_metrics()) {
    CAPTURE(nm.name);
    for (int trial = 0; trial < 20; ++trial) {
      const Christoffel2 gamma = nm.field.christoffel(random_point(nm.field, rng));
      for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) CHECK(gamma[k][i][j] == gamma[k][j][i]);
    }
  }
}

// ============================================================================
// Curvature
// ============================================================================

TEST_CASE("Ricci vanishes in one dimension and on the flat torus") {
  std::mt19937 rng(3);
  for (const NamedMetric& nm : builtin_metrics()) {
    if (nm.field.dim() == 2 && std::string(nm.name) != "flat-2d" &&
        std::string(nm.name) != "dilation") {
      continue;  // curved families covered below
    }
    CAPTURE(nm.name);
    for (int trial = 0; trial < 20; ++trial) {
      const Mat2 ric = nm.field.ricci(random_point(nm.field, rng));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(ric[i][j]) <= 1e-8);
    }
  }
}

TEST_CASE("torus of revolution Ricci matches the closed-form Gauss curvature") {
  // For a surface, ric = K g with K the Gauss curvature. For the torus of
  // revolution with radii (R, a) and poloidal angle theta = 2 pi r2:
  // K = cos(theta) / (a (R + a cos(theta))).
  const double R = 2.0, a = 1.0;
  const MetricField m = MetricField::torus_of_revolution(R, a);
  for (double r2 : {0.0, 0.15, 0.35, 0.5, 0.8}) {
    const ChartPoint p = chart_point(0.3, r2, 0.0);
    const double theta = 2.0 * kPi * r2;
    const double K = std::cos(theta) / (a * (R + a * std::cos(theta)));
    const Mat2 ric = m.ricci(p);
    const Mat2 g = m.metric(p);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        CHECK(std::abs(ric[i][j] - K * g[i][j]) <= 1e-4 * std::max(1.0, std::abs(K * g[i][j])));
      }
    }
    // Symmetry of the tensor itself.
    CHECK(std::abs(ric[0][1] - ric[1][0]) <= 1e-10);
  }
}

// ============================================================================
// Degeneracy guard
// ============================================================================

TEST_CASE("degenerate metrics raise a geometry error naming the problem") {
  const MetricField m = MetricField::expanding_circle(1.0, -1.0);  // R(1) = 0
  CHECK_THROWS_AS(m.metric(chart_point(0.5, 1.0)), GeometryError);
  CHECK_THROWS_AS(MetricField::wavy_circle(2.5), GeometryError);
}
