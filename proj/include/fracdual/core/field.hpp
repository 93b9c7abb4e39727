#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fracdual/core/descriptor.hpp"
#include "fracdual/core/grid.hpp"

namespace fracdual {

/// Space-time lattice of solution values. Level j holds u(., t_start + j*dt).
/// The prehistory descriptor supplies u for t <= t_start, the exterior
/// descriptor supplies u outside the grid interior at all times. Values at
/// exterior-masked nodes are written from the exterior descriptor, never
/// solved.
class HistoryField {
 public:
  SpaceGrid grid;
  double t_start = 0.0;
  double dt = 1.0;
  std::vector<std::vector<double>> levels;
  SpaceTimeFn prehistory = SpaceTimeFn::zero();
  SpaceTimeFn exterior = SpaceTimeFn::zero();

  HistoryField() = default;
  HistoryField(SpaceGrid g, double t0, double step, SpaceTimeFn pre,
               SpaceTimeFn ext)
      : grid(std::move(g)), t_start(t0), dt(step), prehistory(std::move(pre)),
        exterior(std::move(ext)) {
    if (!(dt > 0.0)) throw std::invalid_argument("HistoryField: dt must be > 0");
  }

  std::size_t level_count() const { return levels.size(); }
  double time_of(std::size_t level) const {
    return t_start + static_cast<double>(level) * dt;
  }

  void push_level(std::vector<double> values) {
    if (values.size() != grid.node_count())
      throw std::invalid_argument("HistoryField: level size mismatch");
    levels.push_back(std::move(values));
  }

  /// Seed level 0 from the prehistory at t_start, exterior nodes from the
  /// exterior descriptor.
  void seed_initial_level() {
    std::vector<double> v(grid.node_count());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point p = grid.node(i);
      v[i] = grid.is_interior(i) ? prehistory(p, t_start) : exterior(p, t_start);
    }
    push_level(std::move(v));
  }

  /// u at an arbitrary space-time position: stored levels (linear in x via
  /// the lattice) inside the grid for sampled times, prehistory before
  /// t_start, exterior outside the grid. Sampled times must hit levels.
  double value_at_node(std::size_t node, std::size_t level) const {
    return levels[level][node];
  }

  /// Spatial evaluation at a stored level: lattice interpolation inside the
  /// grid (1-D), exterior descriptor outside.
  double eval_space(double x, std::size_t level, double t) const {
    if (grid.dim != 1)
      throw std::logic_error("HistoryField::eval_space is 1-D");
    const double lo = grid.x_min[0], hi = grid.x_max[0];
    if (x < lo || x > hi) return exterior(Point(x), t);
    const double pos = (x - lo) / grid.h;
    const auto i = static_cast<std::size_t>(std::min(
        pos, static_cast<double>(grid.n[0] - 2)));
    const double theta = pos - static_cast<double>(i);
    const auto& v = levels[level];
    return v[i] * (1.0 - theta) + v[i + 1] * theta;
  }

  double min_interior(std::size_t level_begin, std::size_t level_end) const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t l = level_begin; l < level_end; ++l)
      for (std::size_t i = 0; i < grid.node_count(); ++i)
        if (grid.is_interior(i)) m = std::min(m, levels[l][i]);
    return m;
  }
};

}  // namespace fracdual
