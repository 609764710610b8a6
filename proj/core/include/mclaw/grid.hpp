#pragma once

/// @file grid.hpp
/// Uniform periodic grids on [0,1) and [0,1)^2 and the metric-weighted
/// cell volumes and face measures the finite-volume update needs.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "mclaw/chart.hpp"
#include "mclaw/geometry.hpp"

namespace mclaw {

/// Uniform n-per-axis grid. Cells are indexed i + n*j, faces axis-major:
/// the face with id i + n*j (axis 0) sits at r1 = i*h and separates cell
/// (i-1, j) on its left from cell (i, j) on its right; ids starting at n^2
/// (axis 1) sit at r2 = j*h between cells (i, j-1) and (i, j). The face
/// normal points toward increasing coordinate, so a face contributes with
/// sign +1 to its left cell's boundary integral and -1 to its right cell's.
class Grid {
 public:
  Grid(int dim, int n);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double h() const { return h_; }

  std::size_t num_cells() const { return num_cells_; }
  std::size_t num_faces() const { return num_faces_; }

  std::size_t cell_index(int i, int j = 0) const;
  // Same, accepting coordinates outside [0, n) and wrapping them.
  std::size_t cell_index_wrapped(int i, int j = 0) const;
  std::array<int, 2> cell_coords(std::size_t k) const;
  ChartPoint cell_center(std::size_t k, double t) const;

  // Cell adjacent to k, `step` cells along `axis` (negative steps allowed).
  std::size_t neighbor(std::size_t k, int axis, int step) const;

  struct FaceInfo {
    int axis = 0;
    std::size_t left = 0;
    std::size_t right = 0;
    Vec2 center = {0.0, 0.0};
  };
  FaceInfo face(std::size_t f) const;

 private:
  int dim_ = 1;
  int n_ = 2;
  double h_ = 0.5;
  std::size_t num_cells_ = 2;
  std::size_t num_faces_ = 2;
};

/// Metric-weighted geometric data of a grid at one instant.
struct GridGeometry {
  double t = 0.0;
  std::vector<double> volume;        // per cell, integral of sqrt(det g)
  std::vector<double> face_measure;  // per face; 1 in one dimension
  // Per-face unit conormal covector at the face midpoint, oriented from the
  // left cell to the right cell; |nu|_g = 1 and nu annihilates the face
  // tangent, so <f, nu> is the normal flux density of a vector field f.
  std::vector<Vec2> face_normal;
  double total_volume = 0.0;
};

GridGeometry compute_geometry(const Grid& grid, const MetricField& metric, double t,
                              int quad_order = 4);

/// Per-cell integrals of fn against the volume element at time t,
/// i.e. masses of the density fn.
std::vector<double> integrate_cells(const Grid& grid, const MetricField& metric, double t,
                                    const std::function<double(const ChartPoint&)>& fn,
                                    int quad_order = 4);

}  // namespace mclaw
