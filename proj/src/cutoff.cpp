#include "fracdual/frac_time/cutoff.hpp"

#include <cmath>

namespace fracdual {

namespace {

TimeTrace eta_trace(double scale, double dt) {
  // Sample eta(t/scale) on [-2*scale, 2*scale]; before that eta is 0.
  const double lo = -2.0 * scale, hi = 2.0 * scale;
  const int n = static_cast<int>(std::llround((hi - lo) / dt)) + 1;
  FunctionDescriptor eta = FunctionDescriptor::cutoff(0.0, scale);
  return sample_trace(eta, lo, dt, n);
}

}  // namespace

CutoffBoundResult check_cutoff_bound(const FracParams& params,
                                     const TimeQuadratureConfig& cfg) {
  const double dt = 1e-3;
  TimeTrace tr = eta_trace(1.0, dt);

  CutoffBoundResult r;
  // Lipschitz constant via central differences at spacing 1e-4.
  const double fd = 1e-4;
  for (double t = -2.0; t <= 2.0; t += 5e-4) {
    const double d = (cutoff_eta(t + fd) - cutoff_eta(t - fd)) / (2.0 * fd);
    r.lipschitz = std::max(r.lipschitz, std::abs(d));
  }
  r.bound = params.c_alpha / params.alpha +
            r.lipschitz * params.c_alpha * std::pow(5.0, 1.0 - params.alpha) /
                (1.0 - params.alpha);

  // Probe every 10th level strictly inside (-2, 2).
  for (std::size_t j = 10; j + 1 < tr.values.size(); j += 10) {
    const double t = tr.t_start + static_cast<double>(j) * dt;
    const double v = marchaud(tr, t, params, cfg);
    if (std::abs(v) > r.sup_abs) {
      r.sup_abs = std::abs(v);
      r.arg_sup = t;
    }
  }
  r.satisfied = r.sup_abs <= r.bound;
  return r;
}

ScalingCheckResult check_scaling_identity(const FracParams& params,
                                          double lambda_scale,
                                          const TimeQuadratureConfig& cfg) {
  if (!(lambda_scale > 0.0))
    throw std::invalid_argument("check_scaling_identity: lambda_scale > 0");
  const double dt = 1e-4;
  TimeTrace base = eta_trace(1.0, dt);
  TimeTrace scaled = eta_trace(lambda_scale, dt);

  // d_t^alpha eta stays one-signed left of the falling shoulder; the probe
  // grid keeps clear of the sign change inside (1, 2).
  const double taus[] = {-1.75, -1.5, -1.25, -1.0, -0.75, -0.5, -0.25,
                         0.0,   0.25, 0.5,   0.75};
  const double pref = std::pow(lambda_scale, -params.alpha);

  // Relative errors need the profile bounded away from zero on the grid.
  {
    double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
    for (double tau : taus) {
      const double v = std::abs(marchaud(base, tau, params, cfg));
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    if (mn < 0.01 * mx)
      throw std::logic_error(
          "check_scaling_identity: probe grid too close to the profile's "
          "zero crossing");
  }

  ScalingCheckResult r;
  r.prefactor_expected = pref;
  double ratio_acc = 0.0;
  int ratio_cnt = 0;
  for (double tau : taus) {
    const double base_val = marchaud(base, tau, params, cfg);
    const double rhs = pref * base_val;
    const double lhs = marchaud(scaled, lambda_scale * tau, params, cfg);
    r.max_rel_err = std::max(r.max_rel_err, std::abs(lhs - rhs) / std::abs(rhs));
    ratio_acc += lhs / base_val;
    ++ratio_cnt;
  }
  r.prefactor_observed = ratio_cnt > 0 ? ratio_acc / ratio_cnt : 0.0;
  return r;
}

}  // namespace fracdual
