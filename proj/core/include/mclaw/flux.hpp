#pragma once

/// @file flux.hpp
/// Flux fields f^i(x, t, u) = V^i(x, t) * phi(u): a chart vector field
/// times a scalar profile in the conserved quantity. Every built-in
/// family factors this way, which lets the face flux reduce to a scalar
/// function h(u) = coeff * phi(u) with closed-form monotone kernels for
/// the linear and quadratic profiles.

#include <string>
#include <vector>

#include "mclaw/chart.hpp"
#include "mclaw/expression.hpp"
#include "mclaw/geometry.hpp"

namespace mclaw {

enum class ProfileKind { Linear, Burgers, Custom };

/// Scalar profile phi(u). Linear is phi(u) = u, Burgers is phi(u) = u^2/2,
/// Custom evaluates an expression in the single variable u with a central
/// finite difference for the derivative.
class FluxProfile {
 public:
  FluxProfile() = default;

  static FluxProfile linear();
  static FluxProfile burgers();
  static FluxProfile custom(Expression expr);

  ProfileKind kind() const { return kind_; }
  double value(double u) const;
  double derivative(double u) const;

 private:
  ProfileKind kind_ = ProfileKind::Linear;
  Expression expr_;
};

class FluxField {
 public:
  FluxField() = default;

  static FluxField zero(int dim);
  /// f = direction * u^2/2.
  static FluxField burgers(int dim, Vec2 direction);
  /// f = speed * u.
  static FluxField linear_advection(int dim, Vec2 speed);
  /// f^1 = omega * phi(u), f^2 = 0; the coordinate field along the first
  /// chart direction, a Killing field whenever the metric ignores r1.
  static FluxField killing_rotation(double omega, FluxProfile profile);
  /// f^1 = amplitude * sin(2 pi r2) * phi(u), f^2 = 0 on the 2-torus.
  static FluxField shear(double amplitude, FluxProfile profile);
  /// f^i = field_i(r1, r2, t) * phi(u) with expression-valued components.
  static FluxField compressible(int dim, std::vector<Expression> field, FluxProfile profile);

  int dim() const { return dim_; }
  bool is_zero() const { return zero_; }
  bool time_dependent() const { return time_dependent_; }
  const FluxProfile& profile() const { return profile_; }

  /// Vector part V^i(x, t).
  Vec2 vector_part(const ChartPoint& p) const;

  /// f^i = V^i * phi(u).
  Vec2 value(const ChartPoint& p, double u) const;

  /// d/du f^i = V^i * phi'(u).
  Vec2 du_value(const ChartPoint& p, double u) const;

  /// Metric divergence of the vector part,
  /// div V = d_i V^i + V^i d_i log sqrt(det g).
  /// The spatial divergence of the flux at frozen u is phi(u) * div V.
  double vector_divergence(const ChartPoint& p, const MetricField& metric) const;

 private:
  int dim_ = 1;
  bool zero_ = true;
  bool time_dependent_ = false;
  FluxProfile profile_;
  std::function<Vec2(const ChartPoint&)> vector_fn_;
};

/// Spatial divergence of the flux at frozen u:
/// div^x f = (1/sqrt(det g)) d_i(sqrt(det g) f^i) with u held fixed,
/// which factors as phi(u) * div V for the separable built-in families.
double divx_at(const FluxField& f, const MetricField& metric, const ChartPoint& p, double u);

/// Symmetrized covariant differential of d/du f at (p, u) with indices
/// lowered by g: S_ij = phi'(u) * (nabla_i W_j + nabla_j W_i) / 2 where
/// W_j = g_jk V^k. Vanishes identically iff d/du f is a Killing field.
Mat2 flux_deformation(const FluxField& f, const MetricField& metric, const ChartPoint& p,
                      double u);

/// Largest |eigenvalue| of flux_deformation relative to g, i.e. the
/// extremal value of <nabla_X d/du f, X> over g-unit vectors X.
double killing_defect(const FluxField& f, const MetricField& metric, const ChartPoint& p,
                      double u);

/// Sampled growth constants of the a-priori envelopes at one time.
///   c2: -inf_x lambda - inf_{x,|u|<=u_max} d/du div^x f
///   c3: sup_x |div^x f(x, t, 0)|
///   c4: -inf_{|X|_g<=1} dt_g(X,X) - inf_{|X|_g<=1,|u|<=u_max} <nabla_X d/du f, X>
///   c5: u_max*||grad lambda||_L1 + ||sup_u |grad div^x f|||_L1
///   c6: ||sup_u |div^x f|||_L1
///   c7: sup_x |d/du f|_g
/// Infima over tangent vectors range over the closed unit ball, realized
/// through the eigenvalues of the forms relative to g clamped at zero
/// (X = 0 is admissible). L1 norms use the midpoint rule on the sampling
/// lattice; u ranges over 65 evenly spaced values in [-u_max, u_max].
struct CConstants {
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  double c5 = 0.0;
  double c6 = 0.0;
  double c7 = 0.0;
  int resolution = 0;  // sampling lattice points per axis
  int u_samples = 0;   // samples across [-u_max, u_max]
};

CConstants c_constants_sample(const FluxField& f, const MetricField& metric, double t,
                              double u_max, int resolution);

enum class SchemeKind { EngquistOsher, LocalLaxFriedrichs };

/// Monotone two-point flux for the scalar face flux h(u) = coeff * phi(u).
/// Engquist-Osher integrates |h'| between the states (exactly for the
/// linear and quadratic profiles, by composite Simpson quadrature for
/// custom ones); local Lax-Friedrichs uses the sampled wave speed over
/// the interval spanned by the two states. Equal states return h(uL)
/// bitwise, so both kernels are exactly consistent.
double numerical_flux(SchemeKind scheme, const FluxProfile& profile, double coeff,
                      double uL, double uR);

/// Largest |coeff * phi'| over [lo, hi], sampled at 17 points including the
/// endpoints. Exact for the linear and quadratic profiles.
double max_wave_speed(const FluxProfile& profile, double coeff, double lo, double hi);

}  // namespace mclaw
