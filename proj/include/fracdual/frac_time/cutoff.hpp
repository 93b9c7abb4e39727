#pragma once

#include "fracdual/core/descriptor.hpp"
#include "fracdual/frac_time/marchaud.hpp"

namespace fracdual {

/// C-infinity bump: 1 on [-1,1], support in (-2,2), monotone shoulders.
inline double cutoff_eta(double t) { return smooth_cutoff_eta(t); }

/// Piecewise trace sin t on (0, 2pi], t on (-R, 0], -R before; continuous at
/// the gluing points and eventually constant -R.
inline FunctionDescriptor counterexample_trace(double R) {
  return FunctionDescriptor::counterexample(R);
}

struct CutoffBoundResult {
  double sup_abs = 0.0;     // sup |d_t^alpha eta| over the probed grid
  double bound = 0.0;       // c_alpha/alpha + C_lip*c_alpha*5^{1-alpha}/(1-alpha)
  double lipschitz = 0.0;   // estimated max |eta'|
  double arg_sup = 0.0;     // t achieving the sup
  bool satisfied = false;
};

/// Probes |d_t^alpha eta| on a fine grid over (-2,2) against the bound whose
/// constant depends only on alpha (Lipschitz constant of eta estimated by
/// central differences at spacing 1e-4).
CutoffBoundResult check_cutoff_bound(const FracParams& params,
                                     const TimeQuadratureConfig& cfg = {});

struct ScalingCheckResult {
  double max_rel_err = 0.0;
  double prefactor_observed = 0.0;  // ratio of scaled to unscaled values
  double prefactor_expected = 0.0;  // lambda^{-alpha}
};

/// Verifies d_t^alpha[eta(./lambda)](lambda*tau) = lambda^{-alpha} *
/// (d_t^alpha eta)(tau) on a tau-grid bounded away from the profile's zero
/// crossing. Both sides use the same absolute sampling step so the agreement
/// is a genuine two-resolution check, not an algebraic identity of one
/// discretization.
ScalingCheckResult check_scaling_identity(const FracParams& params,
                                          double lambda_scale,
                                          const TimeQuadratureConfig& cfg = {});

}  // namespace fracdual
