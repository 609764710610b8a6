#include "mclaw/grid.hpp"

#include <cmath>

#include "mclaw/quadrature.hpp"
#include "mclaw/util.hpp"

namespace mclaw {

Grid::Grid(int dim, int n) : dim_(dim), n_(n) {
  if (dim != 1 && dim != 2) throw ConfigError("grid dimension must be 1 or 2");
  if (n < 4 || n > 65536) throw ConfigError("grid resolution must be in [4, 65536]");
  h_ = 1.0 / n;
  num_cells_ = static_cast<std::size_t>(n);
  if (dim == 2) num_cells_ *= static_cast<std::size_t>(n);
  num_faces_ = num_cells_ * static_cast<std::size_t>(dim);
}

std::size_t Grid::cell_index(int i, int j) const {
  return static_cast<std::size_t>(i) + static_cast<std::size_t>(n_) * static_cast<std::size_t>(j);
}

std::size_t Grid::cell_index_wrapped(int i, int j) const {
  const int iw = ((i % n_) + n_) % n_;
  const int jw = ((j % n_) + n_) % n_;
  return cell_index(iw, dim_ == 2 ? jw : 0);
}

std::array<int, 2> Grid::cell_coords(std::size_t k) const {
  const int i = static_cast<int>(k % static_cast<std::size_t>(n_));
  const int j = static_cast<int>(k / static_cast<std::size_t>(n_));
  return {i, j};
}

ChartPoint Grid::cell_center(std::size_t k, double t) const {
  const auto [i, j] = cell_coords(k);
  ChartPoint p;
  p.r[0] = (i + 0.5) * h_;
  p.r[1] = dim_ == 2 ? (j + 0.5) * h_ : 0.0;
  p.t = t;
  return p;
}

std::size_t Grid::neighbor(std::size_t k, int axis, int step) const {
  auto [i, j] = cell_coords(k);
  if (axis == 0) i += step;
  else j += step;
  return cell_index_wrapped(i, j);
}

Grid::FaceInfo Grid::face(std::size_t f) const {
  FaceInfo info;
  if (dim_ == 1) {
    const int i = static_cast<int>(f);
    info.axis = 0;
    info.left = cell_index_wrapped(i - 1);
    info.right = static_cast<std::size_t>(i);
    info.center = {i * h_, 0.0};
    return info;
  }
  const std::size_t per_axis = num_cells_;
  if (f < per_axis) {
    const int i = static_cast<int>(f % static_cast<std::size_t>(n_));
    const int j = static_cast<int>(f / static_cast<std::size_t>(n_));
    info.axis = 0;
    info.left = cell_index_wrapped(i - 1, j);
    info.right = cell_index(i, j);
    info.center = {i * h_, (j + 0.5) * h_};
  } else {
    const std::size_t g = f - per_axis;
    const int i = static_cast<int>(g % static_cast<std::size_t>(n_));
    const int j = static_cast<int>(g / static_cast<std::size_t>(n_));
    info.axis = 1;
    info.left = cell_index_wrapped(i, j - 1);
    info.right = cell_index(i, j);
    info.center = {(i + 0.5) * h_, j * h_};
  }
  return info;
}

GridGeometry compute_geometry(const Grid& grid, const MetricField& metric, double t,
                              int quad_order) {
  const GaussRule& rule = gauss_rule(quad_order);
  const double h = grid.h();
  GridGeometry geo;
  geo.t = t;
  geo.volume.assign(grid.num_cells(), 0.0);
  geo.face_measure.assign(grid.num_faces(), 0.0);
  geo.face_normal.assign(grid.num_faces(), Vec2{0.0, 0.0});

  if (grid.dim() == 1) {
    for (std::size_t k = 0; k < grid.num_cells(); ++k) {
      const double r0 = static_cast<double>(k) * h;
      double v = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        v += rule.weights[q] * metric.sqrt_det(chart_point(r0 + rule.nodes[q] * h, t));
      }
      geo.volume[k] = v * h;
    }
    // Boundary points of an interval carry counting measure.
    for (std::size_t f = 0; f < grid.num_faces(); ++f) {
      geo.face_measure[f] = 1.0;
      const Grid::FaceInfo info = grid.face(f);
      const MetricSample m = metric.sample(chart_point(info.center[0], t));
      geo.face_normal[f] = {1.0 / std::sqrt(m.g_inv[0][0]), 0.0};
    }
  } else {
    const int n = grid.n();
    parallel_for(grid.num_cells(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        const int i = static_cast<int>(k % static_cast<std::size_t>(n));
        const int j = static_cast<int>(k / static_cast<std::size_t>(n));
        const double r1 = i * h;
        const double r2 = j * h;
        double v = 0.0;
        for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
          for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
            v += rule.weights[a] * rule.weights[b] *
                 metric.sqrt_det(
                     chart_point(r1 + rule.nodes[a] * h, r2 + rule.nodes[b] * h, t));
          }
        }
        geo.volume[k] = v * h * h;
      }
    });
    parallel_for(grid.num_faces(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t f = begin; f < end; ++f) {
        const Grid::FaceInfo info = grid.face(f);
        // Induced length element along the face: sqrt of the metric
        // component in the tangential direction.
        const int tangent = 1 - info.axis;
        double s = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
          Vec2 r = info.center;
          r[static_cast<std::size_t>(tangent)] +=
              (rule.nodes[q] - 0.5) * h;
          const Mat2 g = metric.metric(chart_point(r[0], r[1], t));
          s += rule.weights[q] *
               std::sqrt(g[static_cast<std::size_t>(tangent)][static_cast<std::size_t>(tangent)]);
        }
        geo.face_measure[f] = s * h;
        // Unit conormal covector at the face midpoint: the normalized
        // coordinate differential of the crossed axis. Its metric dual is
        // g-orthogonal to the face tangent by construction.
        const MetricSample m =
            metric.sample(chart_point(info.center[0], info.center[1], t));
        const std::size_t a = static_cast<std::size_t>(info.axis);
        Vec2 nu = {0.0, 0.0};
        nu[a] = 1.0 / std::sqrt(m.g_inv[a][a]);
        geo.face_normal[f] = nu;
      }
    });
  }

  geo.total_volume = 0.0;
  for (double v : geo.volume) geo.total_volume += v;
  return geo;
}

std::vector<double> integrate_cells(const Grid& grid, const MetricField& metric, double t,
                                    const std::function<double(const ChartPoint&)>& fn,
                                    int quad_order) {
  const GaussRule& rule = gauss_rule(quad_order);
  const double h = grid.h();
  std::vector<double> out(grid.num_cells(), 0.0);
  if (grid.dim() == 1) {
    for (std::size_t k = 0; k < grid.num_cells(); ++k) {
      const double r0 = static_cast<double>(k) * h;
      double v = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const ChartPoint p = chart_point(r0 + rule.nodes[q] * h, t);
        v += rule.weights[q] * fn(p) * metric.sqrt_det(p);
      }
      out[k] = v * h;
    }
  } else {
    const int n = grid.n();
    for (std::size_t k = 0; k < grid.num_cells(); ++k) {
      const int i = static_cast<int>(k % static_cast<std::size_t>(n));
      const int j = static_cast<int>(k / static_cast<std::size_t>(n));
      double v = 0.0;
      for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
        for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
          const ChartPoint p =
              chart_point(i * h + rule.nodes[a] * h, j * h + rule.nodes[b] * h, t);
          v += rule.weights[a] * rule.weights[b] * fn(p) * metric.sqrt_det(p);
        }
      }
      out[k] = v * h * h;
    }
  }
  return out;
}

}  // namespace mclaw
