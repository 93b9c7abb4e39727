#include "fracdual/core/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace fracdual {

HistoryField antisymmetric_difference(const HistoryField& u, double lambda) {
  const SpaceGrid& g = u.grid;
  if (g.dim != 1)
    throw std::invalid_argument("antisymmetric_difference: 1-D grids only");
  if (lambda < g.x_min[0] || lambda > g.x_max[0])
    throw std::invalid_argument(
        "antisymmetric_difference: lambda outside the grid x1 range");

  // Sub-grid: nodes with x <= lambda. Keep the node at lambda when it is on
  // the lattice (w vanishes there by construction).
  const double pos = (lambda - g.x_min[0]) / g.h;
  const int n_sub = static_cast<int>(std::floor(pos + 1e-9)) + 1;
  if (n_sub < 2)
    throw std::invalid_argument("antisymmetric_difference: sub-grid degenerate");

  SpaceGrid sub = SpaceGrid::make_1d(
      g.x_min[0], g.x_min[0] + static_cast<double>(n_sub - 1) * g.h, n_sub,
      DomainKind::slab, std::max(g.dom_a[0], g.x_min[0]), lambda);

  // w's own descriptors: the reflected difference of an x1-constant space
  // part vanishes identically, so zero is exact in that common case.
  // Operator checks always evaluate through the source field.
  HistoryField w(sub, u.t_start, u.dt, SpaceTimeFn::zero(), SpaceTimeFn::zero());
  const bool exact = u.grid.reflection_is_lattice_exact(lambda);
  for (std::size_t lvl = 0; lvl < u.level_count(); ++lvl) {
    const double t = u.time_of(lvl);
    std::vector<double> row(static_cast<std::size_t>(n_sub));
    for (int i = 0; i < n_sub; ++i) {
      const double x = sub.x_min[0] + static_cast<double>(i) * sub.h;
      double u_refl;
      if (exact) {
        const long ir = g.reflected_node(static_cast<std::size_t>(i), lambda);
        u_refl = ir >= 0 ? u.levels[lvl][static_cast<std::size_t>(ir)]
                         : u.exterior(Point(2.0 * lambda - x), t);
      } else {
        u_refl = u.eval_space(2.0 * lambda - x, lvl, t);
      }
      row[static_cast<std::size_t>(i)] = u_refl - u.levels[lvl][static_cast<std::size_t>(i)];
    }
    w.push_level(std::move(row));
  }
  return w;
}

GrowthFit growth_check(const std::vector<std::pair<Point, double>>& samples,
                       double gamma, double c_budget) {
  if (samples.empty())
    throw std::invalid_argument("growth_check: empty sample list");
  double c_fit = 0.0;
  for (const auto& [p, v] : samples) {
    if (v < 0.0) c_fit = std::max(c_fit, -v / (1.0 + std::pow(p.norm(), gamma)));
  }
  return {c_fit, c_fit <= c_budget};
}

}  // namespace fracdual
