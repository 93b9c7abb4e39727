#pragma once

#include <optional>

#include "fracdual/core/geometry.hpp"
#include "fracdual/core/report.hpp"
#include "fracdual/solver/solver.hpp"

namespace fracdual {

struct PrincipleTolerance {
  double hypothesis_tol = 1e-6;
  double conclusion_tol = 1e-8;
};

/// Bounded-domain sign principle: operator inequality, exterior sign, and
/// full-past sign are verified numerically (the operator via the standalone
/// evaluators on a subsample of nodes/levels); the verdict is "holds" iff
/// the interior minimum over the window clears -conclusion_tol, and
/// "inconclusive" whenever a hypothesis fails.
ExperimentReport check_max_principle(const HistoryField& traj, double t1,
                                     double t2, const PrincipleTolerance& tol,
                                     const FracParams& params,
                                     const SolveConfig& cfg);

/// Antisymmetric variant on w(x,t) = u(x^lambda,t) - u(x,t): operator
/// inequality on w, data sign on the left region outside Omega, past sign,
/// and exact antisymmetry. With `c0` set, additionally bounds the effective
/// coefficient (f(u_lambda) - f(u)) / w by c0 where |w| is resolvable
/// (unbounded-width variant of the principle).
ExperimentReport check_antisym_max_principle(
    const HistoryField& u, double lambda, double t1, double t2,
    const PrincipleTolerance& tol, const FracParams& params,
    const SolveConfig& cfg, const ReactionSpec* reaction = nullptr,
    std::optional<double> c0 = std::nullopt);

/// Same checks for a trajectory produced by the antisymmetrically folded
/// marcher (the stored field IS w on the left half; antisymmetry holds by
/// construction). The operator residual uses the standalone time evaluator
/// plus the folded spatial assembly.
ExperimentReport check_antisym_max_principle_folded(
    const HistoryField& w, double t1, double t2, const PrincipleTolerance& tol,
    const FracParams& params, const SolveConfig& cfg,
    const std::optional<std::vector<double>>& c_field = std::nullopt);

struct NarrowRegionResult {
  ExperimentReport report;
  double slab_width = 0.0;   // 2l
  double min_w_late = 0.0;   // min over the slab in the late-time window
  double growth_c_fit = 0.0; // fitted C of the growth condition
};

/// Evolves an antisymmetric field on the slab (lambda-2l, lambda) with
/// coefficient c(x), nonnegative data outside the slab, and a negative dip
/// planted in the slab's past; reports whether the late-time minimum clears
/// -conclusion_tol. The principle predicts recovery exactly for narrow
/// slabs when c is bounded above.
NarrowRegionResult narrow_region_experiment(double l, double lambda,
                                            const FunctionDescriptor& c_field,
                                            const PrincipleTolerance& tol,
                                            const FracParams& params,
                                            SolveConfig cfg,
                                            double dip_depth = 0.5);

struct NarrowRegionSweep {
  std::vector<NarrowRegionResult> results;  // one per l, in given order
  double l_star = 0.0;  // largest tested l from which all smaller l hold
};
NarrowRegionSweep narrow_region_sweep(const std::vector<double>& l_values,
                                      double lambda,
                                      const FunctionDescriptor& c_field,
                                      const PrincipleTolerance& tol,
                                      const FracParams& params,
                                      const SolveConfig& cfg);

struct AveragingResult {
  ExperimentReport report;
  double c2 = 0.0;      // measured kernel (or kernel-difference) integral
  double eps = 0.0;     // c2 / 2
  double delta = 0.0;   // c2 * r^{2s} / (2 C): the certified lower bound C1
  double u_at_probe = 0.0;
  double min_above_barrier = 0.0;  // min of u - delta*phi*eta over the cylinder
};

/// Positivity transfer from a plateau on D = [d1, d2] to the disjoint ball
/// B_r(x0): solves the zero-reaction evolution with data C0 on D, measures
/// the kernel integral C2, and certifies u(x0, t0) >= delta computed from it.
AveragingResult averaging_effect_experiment(double d1, double d2, double x0,
                                            double r, double C0,
                                            const PrincipleTolerance& tol,
                                            const FracParams& params,
                                            SolveConfig cfg);

/// Antisymmetric twin: data plateau on D inside the left half-plane of
/// {x1 = lambda}, antisymmetric evolution, kernel-difference integral, and
/// w(x0, t0) >= delta with the antisymmetric bump pair.
AveragingResult antisym_averaging_experiment(double d1, double d2, double x0,
                                             double r, double C0, double lambda,
                                             const PrincipleTolerance& tol,
                                             const FracParams& params,
                                             SolveConfig cfg);

struct PlaneScanRow {
  double lambda = 0.0;
  double min_w = 0.0;
  double argmin_x = 0.0;
  double argmin_t = 0.0;
};

struct PlaneScanResult {
  std::vector<PlaneScanRow> rows;
  double lambda0 = std::numeric_limits<double>::infinity();  // sentinel: none
  bool monotone = false;
  bool steady = false;
  double min_forward_diff = 0.0;  // over x1 < x_half in the late window
  double steadiness_increment = 0.0;
};

/// Sweeps reflection planes across the trajectory's late-time window:
/// per-plane minimum of the reflected deficit, the first plane (bisection-
/// refined to 3 digits) whose minimum undershoots -tol, and the pointwise
/// forward-difference monotonicity on the near half of the domain.
PlaneScanResult moving_plane_scan(const HistoryField& traj,
                                  const std::vector<double>& lambda_grid,
                                  const PrincipleTolerance& tol,
                                  double steadiness_threshold = 1e-6);

struct CounterexampleResult {
  ExperimentReport report;
  double min_marchaud = 0.0;  // over the probe grid of (0, 2pi]
  double arg_min_marchaud = 0.0;
  double min_u = 0.0;
  double arg_min_u = 0.0;
  std::vector<std::pair<double, double>> profile;  // (t, d_t^alpha u)
};

/// The introductory fixture: u = sin t glued to a linear-then-constant past.
/// The one-sided derivative stays nonnegative on (0, 2pi] for large R while
/// u itself dips to -1, showing the full-past sign hypothesis is necessary.
CounterexampleResult counterexample_experiment(double alpha, double R,
                                               int n_probe = 200,
                                               const PrincipleTolerance& tol = {});

}  // namespace fracdual
