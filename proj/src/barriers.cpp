#include "fracdual/frac_space/barriers.hpp"

#include <algorithm>
#include <cmath>

namespace fracdual {

namespace {

double ball_mean(double r, const FracParams& params,
                 const SpaceQuadratureConfig& cfg, std::vector<double>* probes,
                 double* spread) {
  FunctionDescriptor phi = FunctionDescriptor::ball_barrier(0.0, r, params.s);
  double mn = std::numeric_limits<double>::infinity();
  double mx = -mn;
  double sum = 0.0;
  const int n_probe = 9;
  const double fd = std::min(1e-2, 2e-2 * r);
  for (int k = 0; k < n_probe; ++k) {
    const double x =
        -0.8 * r + 1.6 * r * static_cast<double>(k) / (n_probe - 1);
    const double v = frac_laplacian(phi, Point(x), params, cfg, fd);
    if (probes) probes->push_back(v);
    mn = std::min(mn, v);
    mx = std::max(mx, v);
    sum += v;
  }
  const double mean = sum / n_probe;
  if (spread) *spread = (mx - mn) / mean;
  return mean;
}

}  // namespace

BallConstancyResult verify_ball_constancy(double r, const FracParams& params,
                                          const SpaceQuadratureConfig& cfg) {
  if (!(r > 0.0)) throw std::invalid_argument("verify_ball_constancy: r > 0");
  BallConstancyResult res;
  res.mean = ball_mean(r, params, cfg, &res.probe_values, &res.rel_spread);
  const double mean_half = ball_mean(0.5 * r, params, cfg, nullptr, nullptr);
  const double mean_double = ball_mean(2.0 * r, params, cfg, nullptr, nullptr);
  res.scaling_ratio_half = mean_half / res.mean;
  res.scaling_ratio_double = mean_double / res.mean;
  return res;
}

}  // namespace fracdual
