#pragma once

/// @file laplace_beltrami.hpp
/// Conservative face-flux discretization of the metric Laplacian
/// (1/sqrt(det g)) d_i (sqrt(det g) g^{ij} d_j u) on the periodic grid.

#include <cstddef>
#include <span>
#include <vector>

#include "mclaw/geometry.hpp"
#include "mclaw/grid.hpp"

namespace mclaw {

/// Per-face coefficients of the gradient flux through each face, frozen at
/// one time. The chart flux of grad u through face f is
///   normal_coeff[f] * (u_right - u_left)
///   + cross_coeff[f] * (u_ru + u_lu - u_rd - u_ld)
/// where the second line is a four-point tangential difference that only
/// appears for metrics with off-diagonal terms (none of the built-in
/// families). Coefficients absorb every chart spacing factor, so the cell
/// update is flux differences divided by the metric cell volume.
struct ViscousOperator {
  double t = 0.0;
  std::vector<double> normal_coeff;
  std::vector<double> cross_coeff;
  bool has_cross = false;
};

ViscousOperator build_viscous_operator(const Grid& grid, const MetricField& metric, double t);

/// Chart-integrated flux of grad u through face f, oriented left to right.
double viscous_face_flux(const Grid& grid, const ViscousOperator& op, std::size_t f,
                         std::span<const double> u);

/// Cell values of the Laplacian: (1/V_K) sum of signed face fluxes. Exactly
/// zero for constant fields.
std::vector<double> laplace_beltrami_apply(const Grid& grid, const MetricField& metric,
                                           double t, std::span<const double> u);

}  // namespace mclaw
