#pragma once

#include <array>
#include <cmath>

#include "mclaw/util.hpp"

namespace mclaw {

// All manifolds are presented on the periodic unit box [0,1)^d, d in {1,2}.
// Storage is fixed at the maximum dimension; the active dimension travels with
// the metric/grid objects, and unused slots stay zero.

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;
using Christoffel2 = std::array<Mat2, 2>;  // [k][i][j] = Gamma^k_ij

/// Wraps a coordinate into [0,1).
inline double wrap01(double x) {
  double w = x - std::floor(x);
  return (w >= 1.0) ? w - 1.0 : w;
}

/// Shortest signed representative of x - y on the unit circle, in [-0.5, 0.5].
inline double wrap_diff(double x, double y) {
  double d = x - y;
  return d - std::round(d);
}

struct ChartPoint {
  Vec2 r{0.0, 0.0};
  double t = 0.0;
};

inline ChartPoint chart_point(double r1, double t) { return {{wrap01(r1), 0.0}, t}; }
inline ChartPoint chart_point(double r1, double r2, double t) {
  return {{wrap01(r1), wrap01(r2)}, t};
}

inline Mat2 mat_zero() { return {{{0.0, 0.0}, {0.0, 0.0}}}; }

/// Identity on the leading dim slots, zero elsewhere.
inline Mat2 mat_identity(int dim) {
  Mat2 m = mat_zero();
  for (int i = 0; i < dim; ++i) m[i][i] = 1.0;
  return m;
}

inline double mat_det(const Mat2& m, int dim) {
  return dim == 1 ? m[0][0] : m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

inline Mat2 mat_scaled(const Mat2& m, double s) {
  Mat2 out = mat_zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = s * m[i][j];
  return out;
}

/// Inverse of a 1x1 or 2x2 tensor. The caller is responsible for checking
/// positivity first (metric_at does).
inline Mat2 mat_inverse(const Mat2& m, int dim) {
  Mat2 inv = mat_zero();
  if (dim == 1) {
    inv[0][0] = 1.0 / m[0][0];
    return inv;
  }
  const double det = mat_det(m, 2);
  inv[0][0] = m[1][1] / det;
  inv[1][1] = m[0][0] / det;
  inv[0][1] = -m[0][1] / det;
  inv[1][0] = -m[1][0] / det;
  return inv;
}

/// Bilinear form value x^T m y restricted to the leading dim entries.
inline double mat_form(const Mat2& m, const Vec2& x, const Vec2& y, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) s += x[i] * m[i][j] * y[j];
  return s;
}

/// Eigenvalues of the pencil S v = mu g v for symmetric S and positive
/// definite g. These are the critical values of the Rayleigh quotient
/// S(X,X)/g(X,X), i.e. the extrema of S over g-unit vectors. Returned sorted
/// ascending; for dim == 1 both entries hold the single value.
inline std::array<double, 2> pencil_eigenvalues(const Mat2& S, const Mat2& g, int dim) {
  if (dim == 1) {
    const double v = S[0][0] / g[0][0];
    return {v, v};
  }
  const Mat2 ginv = mat_inverse(g, 2);
  // A = g^{-1} S is similar to a symmetric matrix, so its spectrum is real.
  const double a = ginv[0][0] * S[0][0] + ginv[0][1] * S[1][0];
  const double b = ginv[0][0] * S[0][1] + ginv[0][1] * S[1][1];
  const double c = ginv[1][0] * S[0][0] + ginv[1][1] * S[1][0];
  const double d = ginv[1][0] * S[0][1] + ginv[1][1] * S[1][1];
  const double tr = a + d;
  const double det = a * d - b * c;
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  return {0.5 * (tr - disc), 0.5 * (tr + disc)};
}

}  // namespace mclaw
