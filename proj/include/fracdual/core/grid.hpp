#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fracdual {

/// Spatial point, dim 1 or 2. x[1] is ignored in 1-D.
struct Point {
  std::array<double, 2> x{0.0, 0.0};
  int dim = 1;

  Point() = default;
  explicit Point(double x1) : x{x1, 0.0}, dim(1) {}
  Point(double x1, double x2) : x{x1, x2}, dim(2) {}

  double x1() const { return x[0]; }
  double norm() const {
    return dim == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
  }
};

enum class DomainKind { interval, ball, slab, half_space_truncation };

/// Uniform lattice with an interior/exterior classification derived from
/// the domain kind. Interior nodes are the PDE unknowns; every other node
/// carries prescribed data. Spacing is h = (x_max - x_min)/(n - 1) per axis
/// (equal on both axes in 2-D).
class SpaceGrid {
 public:
  int dim = 1;
  std::array<double, 2> x_min{0.0, 0.0};
  std::array<double, 2> x_max{1.0, 0.0};
  std::array<int, 2> n{2, 1};
  double h = 1.0;
  DomainKind kind = DomainKind::interval;
  // Kind parameters: interval/slab: (a, b) bounds in x1;
  // ball: center = (a0, a1), radius = b0; half_space_truncation: (0, L).
  std::array<double, 2> dom_a{0.0, 0.0};
  std::array<double, 2> dom_b{0.0, 0.0};
  std::vector<bool> interior_mask;

  static SpaceGrid make_1d(double x_min, double x_max, int n, DomainKind kind,
                           double a, double b) {
    if (n < 2) throw std::invalid_argument("SpaceGrid: need n >= 2");
    if (!(x_max > x_min)) throw std::invalid_argument("SpaceGrid: x_max <= x_min");
    SpaceGrid g;
    g.dim = 1;
    g.x_min = {x_min, 0.0};
    g.x_max = {x_max, 0.0};
    g.n = {n, 1};
    g.h = (x_max - x_min) / static_cast<double>(n - 1);
    g.kind = kind;
    g.dom_a = {a, 0.0};
    g.dom_b = {b, 0.0};
    g.rebuild_mask();
    return g;
  }

  static SpaceGrid make_2d(double x_min, double x_max, int n_per_axis,
                           DomainKind kind, std::array<double, 2> a,
                           std::array<double, 2> b) {
    if (n_per_axis < 2) throw std::invalid_argument("SpaceGrid: need n >= 2");
    if (!(x_max > x_min)) throw std::invalid_argument("SpaceGrid: x_max <= x_min");
    SpaceGrid g;
    g.dim = 2;
    g.x_min = {x_min, x_min};
    g.x_max = {x_max, x_max};
    g.n = {n_per_axis, n_per_axis};
    g.h = (x_max - x_min) / static_cast<double>(n_per_axis - 1);
    g.kind = kind;
    g.dom_a = a;
    g.dom_b = b;
    g.rebuild_mask();
    return g;
  }

  std::size_t node_count() const {
    return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]);
  }

  Point node(std::size_t idx) const {
    if (dim == 1) return Point(x_min[0] + static_cast<double>(idx) * h);
    const std::size_t i = idx % static_cast<std::size_t>(n[0]);
    const std::size_t j = idx / static_cast<std::size_t>(n[0]);
    return Point(x_min[0] + static_cast<double>(i) * h,
                 x_min[1] + static_cast<double>(j) * h);
  }

  bool is_interior(std::size_t idx) const { return interior_mask[idx]; }

  /// True when the node lies in the domain of kind `kind` with the stored
  /// parameters. Strict inequalities with an h-scaled guard band: a node
  /// meant to sit on the boundary must classify as data even when lattice
  /// arithmetic rounds it a few ulps inward.
  bool in_domain(const Point& p) const {
    const double eps = 1e-9 * h;
    switch (kind) {
      case DomainKind::interval:
      case DomainKind::slab:
      case DomainKind::half_space_truncation:
        return p.x[0] > dom_a[0] + eps && p.x[0] < dom_b[0] - eps;
      case DomainKind::ball: {
        const double dx = p.x[0] - dom_a[0];
        const double dy = dim == 2 ? p.x[1] - dom_a[1] : 0.0;
        return std::sqrt(dx * dx + dy * dy) < dom_b[0] - eps;
      }
    }
    return false;
  }

  /// Whether reflection across {x1 = lambda} maps the lattice onto itself.
  bool reflection_is_lattice_exact(double lambda, double tol = 1e-9) const {
    const double q = 2.0 * (lambda - x_min[0]) / h;
    return std::abs(q - std::round(q)) < tol;
  }

  /// Index of the reflected node, or -1 when the image leaves the grid.
  /// Requires a lattice-exact lambda.
  long reflected_node(std::size_t idx, double lambda) const {
    const double q = 2.0 * (lambda - x_min[0]) / h;
    const long shift = static_cast<long>(std::llround(q));
    long i, j = 0;
    if (dim == 1) {
      i = static_cast<long>(idx);
    } else {
      i = static_cast<long>(idx % static_cast<std::size_t>(n[0]));
      j = static_cast<long>(idx / static_cast<std::size_t>(n[0]));
    }
    const long ir = shift - i;
    if (ir < 0 || ir >= n[0]) return -1;
    return ir + j * n[0];
  }

  void rebuild_mask() {
    interior_mask.assign(node_count(), false);
    for (std::size_t k = 0; k < node_count(); ++k)
      interior_mask[k] = in_domain(node(k));
  }
};

}  // namespace fracdual
