#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "fracdual/core/descriptor.hpp"
#include "fracdual/core/grid.hpp"
#include "fracdual/core/params.hpp"

namespace fracdual {

enum class SpaceTailMode { constant_exact, power_series };

struct SpaceQuadratureConfig {
  double inner_radius_factor = 2.0;  // Taylor zone = (0, kappa*h]
  double z_max = 0.0;                // 0 => 100 * (grid extent) or analytic default
  int boundary_refine = 16;          // finer panels within h of non-smooth loci
  SpaceTailMode tail_mode = SpaceTailMode::constant_exact;

  void validate() const {
    if (!(inner_radius_factor >= 1.0))
      throw std::invalid_argument("SpaceQuadratureConfig: inner_radius_factor >= 1");
    if (boundary_refine < 1)
      throw std::invalid_argument("SpaceQuadratureConfig: boundary_refine >= 1");
  }
};

/// View of a sampled spatial field: lattice values plus the analytic
/// exterior beyond the grid. The exterior space descriptor also supplies
/// far-tail information.
struct GridField {
  const SpaceGrid* grid = nullptr;
  const std::vector<double>* values = nullptr;
  const FunctionDescriptor* exterior = nullptr;
  double exterior_scale = 1.0;  // effective exterior = scale * descriptor
};

/// Nonlocal spatial operator at an interior grid node: Taylor zone with a
/// second-difference stencil, composite panel quadrature with lattice
/// interpolation inside the grid and the exterior descriptor outside, and a
/// closed-form (or extended-panel) far tail.
double frac_laplacian(const GridField& u, std::size_t node,
                      const FracParams& params, const SpaceQuadratureConfig& cfg);

/// Same operator for an analytic field (1-D or 2-D point). The descriptor's
/// declared non-smooth loci drive panel refinement; `fd_h` sets the Taylor
/// zone width and finite-difference step.
double frac_laplacian(const FunctionDescriptor& u, const Point& x,
                      const FracParams& params, const SpaceQuadratureConfig& cfg,
                      double fd_h = 1e-2);

/// Fully generic 1-D evaluator on a callable, used for reflected/composite
/// fields the descriptor families cannot express. `kinks` lists x-positions
/// where the callable is not smooth; the tail treats the callable as frozen
/// beyond max(z_max, |probes|).
double frac_laplacian_fn(const std::function<double(double)>& u, double x,
                         const FracParams& params,
                         const SpaceQuadratureConfig& cfg, double fd_h,
                         const std::vector<double>& kinks,
                         double w_cap = std::numeric_limits<double>::infinity());

/// Dense discretization of the operator on the grid's interior nodes.
/// A * u_interior approximates the operator once the exterior contribution
/// (lattice exterior nodes + off-grid integral) is added via exterior_load.
/// M-matrix structure: positive diagonal, nonpositive off-diagonal, row sums
/// >= 0 with the exterior included.
class OperatorMatrix {
 public:
  Eigen::MatrixXd interior;            // n_int x n_int
  Eigen::MatrixXd exterior_nodes;      // n_int x n_ext (lattice data columns)
  std::vector<std::size_t> interior_ids;
  std::vector<std::size_t> exterior_ids;

  const SpaceGrid* grid = nullptr;
  FracParams params = FracParams::make(0.5, 0.5);
  SpaceQuadratureConfig cfg;
  // Antisymmetric fold across {x1 = lambda} (lambda = grid right edge):
  // positions beyond the plane read the negated mirror value.
  std::optional<double> fold_lambda;

  /// Off-grid + far-tail contribution of the exterior space function, per
  /// interior row, such that the operator at row i is
  ///   (interior * u)_i + (exterior_nodes * u_ext)_i + load_i.
  Eigen::VectorXd exterior_load(const FunctionDescriptor& ext_space) const;

  /// Full operator value at one interior row given lattice values and the
  /// exterior descriptor (same quadrature as the pointwise evaluator).
  double apply_row(std::size_t row, const std::vector<double>& values,
                   const Eigen::VectorXd& load) const;
};

OperatorMatrix assemble_operator_matrix(
    const SpaceGrid& grid, const FracParams& params,
    const SpaceQuadratureConfig& cfg,
    std::optional<double> fold_lambda = std::nullopt);

}  // namespace fracdual
