#pragma once

/// @file geometry.hpp
/// Time-dependent Riemannian metrics on the periodic charts [0,1) and
/// [0,1)^2. A MetricField supplies the metric tensor plus the derived
/// quantities the solver and the estimate audits need: volume density,
/// its logarithmic time derivative, Christoffel symbols, and Ricci
/// curvature. Spatial and temporal derivatives fall back to central
/// finite differences unless a family provides them in closed form.

#include <functional>
#include <string>
#include <vector>

#include "mclaw/chart.hpp"
#include "mclaw/expression.hpp"
#include "mclaw/util.hpp"

namespace mclaw {

/// Metric data at one point, bundled so callers pay for the inverse and the
/// determinant once.
struct MetricSample {
  Mat2 g = mat_zero();
  Mat2 g_inv = mat_zero();
  double sqrt_det = 0.0;
};

class MetricField {
 public:
  MetricField() = default;

  /// Euclidean metric, identity in chart coordinates.
  static MetricField flat(int dim);

  /// g(t) = (a0 * exp(rate * t))^2 * I. Uniform dilation of the flat chart.
  static MetricField dilation(int dim, double a0, double rate);

  /// Circle of radius R(t) = R0 + rate * t, chart r1 in [0,1):
  /// g_11 = (2 pi R(t))^2. Degenerates when R(t) reaches zero.
  static MetricField expanding_circle(double R0, double rate);

  /// Static circle with non-constant speed along the chart:
  /// g_11 = (2 + amplitude * sin(2 pi r1))^2. Requires |amplitude| < 2.
  static MetricField wavy_circle(double amplitude);

  /// Surface of revolution with toroidal angle r1 and poloidal angle r2:
  /// g_11 = (2 pi rho)^2, g_22 = (2 pi r_minor)^2,
  /// rho(r2) = R_major + r_minor * cos(2 pi r2). Requires R_major > r_minor > 0.
  static MetricField torus_of_revolution(double major_radius, double minor_radius);

  /// Pullback of the Euclidean metric along an embedding given by component
  /// expressions in r1 (, r2) and t. The embedding must be 1-periodic in the
  /// chart variables; positive definiteness is checked at every evaluation.
  static MetricField custom_embedding(int dim, std::vector<Expression> components);

  int dim() const { return dim_; }
  bool time_dependent() const { return time_dependent_; }

  /// Metric tensor g_ij at p. Throws GeometryError if not positive definite.
  Mat2 metric(const ChartPoint& p) const;

  /// Metric, inverse, and volume density in one call.
  MetricSample sample(const ChartPoint& p) const;

  double sqrt_det(const ChartPoint& p) const;

  /// Entry-wise time derivative of g_ij.
  Mat2 dt_metric(const ChartPoint& p) const;

  /// Logarithmic time derivative of the volume density,
  /// lambda = d/dt log sqrt(det g) = (1/2) tr(g^{-1} dg/dt).
  double lambda(const ChartPoint& p) const;

  /// Chart partials of lambda at fixed t.
  Vec2 grad_lambda(const ChartPoint& p) const;

  /// Chart partials of log sqrt(det g) at fixed t.
  Vec2 dlog_sqrt_det(const ChartPoint& p) const;

  /// Christoffel symbols Gamma^k_ij of the Levi-Civita connection.
  Christoffel2 christoffel(const ChartPoint& p) const;

  /// Ricci tensor R_ij. Identically zero in one dimension.
  Mat2 ricci(const ChartPoint& p) const;

 private:
  int dim_ = 1;
  bool time_dependent_ = false;
  std::function<Mat2(const ChartPoint&)> metric_fn_;
  std::function<Mat2(const ChartPoint&)> dt_metric_fn_;  // optional closed form
  std::function<double(const ChartPoint&)> lambda_fn_;   // optional closed form
};

}  // namespace mclaw
