#pragma once

#include <utility>
#include <vector>

#include "fracdual/core/field.hpp"
#include "fracdual/core/grid.hpp"

namespace fracdual {

/// Reflection across the hyperplane {x1 = lambda}; an involution fixing the
/// plane pointwise.
inline Point reflect_point(const Point& p, double lambda) {
  Point q = p;
  q.x[0] = 2.0 * lambda - p.x[0];
  return q;
}

/// Reflected deficit w(x, t) = u(2*lambda - x1, x', t) - u(x, t) sampled on
/// the part of the grid left of the plane. Reflected positions are read from
/// the lattice when lambda is lattice-exact, otherwise linearly interpolated;
/// images beyond the grid use the exterior descriptor.
///
/// The returned field's own prehistory/exterior descriptors are the exact
/// reflected difference when the source space parts are constant in x1 (then
/// w data is identically 0); operator checks should evaluate through the
/// source field, which is always exact.
HistoryField antisymmetric_difference(const HistoryField& u, double lambda);

/// Smallest C with value >= -C * (1 + |x|^gamma) over all samples, plus
/// whether a caller-supplied budget (infinite by default) is respected.
struct GrowthFit {
  double c_fit = 0.0;
  bool satisfied = true;
};
GrowthFit growth_check(const std::vector<std::pair<Point, double>>& samples,
                       double gamma,
                       double c_budget = std::numeric_limits<double>::infinity());

}  // namespace fracdual
