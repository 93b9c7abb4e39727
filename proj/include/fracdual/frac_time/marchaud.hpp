#pragma once

#include <vector>

#include "fracdual/core/descriptor.hpp"
#include "fracdual/core/params.hpp"

namespace fracdual {

enum class TimeScheme { l1_piecewise_linear };
enum class TimeTailMode { analytic_constant, adaptive_then_constant };

struct TimeQuadratureConfig {
  TimeScheme scheme = TimeScheme::l1_piecewise_linear;
  TimeTailMode tail_mode = TimeTailMode::analytic_constant;
  double t_big = 50.0;        // first adaptive window depth behind t_start
  double adaptive_tol = 1e-10;

  void validate() const {
    if (!(t_big > 0.0)) throw std::invalid_argument("TimeQuadratureConfig: t_big > 0");
    if (!(adaptive_tol > 0.0))
      throw std::invalid_argument("TimeQuadratureConfig: adaptive_tol > 0");
  }
};

/// Sampled time trace with an analytic prehistory valid for t <= t_start.
struct TimeTrace {
  double t_start = 0.0;
  double dt = 1.0;
  std::vector<double> values;        // values[j] = u(t_start + j*dt)
  FunctionDescriptor prehistory = FunctionDescriptor::constant(0.0);
  double prehistory_scale = 1.0;     // effective prehistory = scale * descriptor

  double t_end() const {
    return t_start + dt * static_cast<double>(values.size() - 1);
  }
};

/// Sample an analytic descriptor into a trace whose prehistory is the
/// descriptor itself.
TimeTrace sample_trace(const FunctionDescriptor& f, double t_start, double dt,
                       int n_levels);

/// Affine form of the sampled-segment evaluation at level n:
///   value_of_sampled_part = c_alpha * (w_top * u_n + sum_j w_hist[j] * u_j),
/// where w_hist[j] <= 0 for j < n. The solver consumes a0/b built from these
/// plus the prehistory kernel mass.
struct MarchaudWeights {
  double a0 = 0.0;              // includes the prehistory kernel mass
  std::vector<double> b;        // b[j] >= 0, j = 0..n-1; all multiplied by c_alpha
  double kernel_mass = 0.0;     // (n*dt)^{-alpha}/alpha (pre-multiplied into a0)
};
MarchaudWeights marchaud_weights(int n_level, double dt, const FracParams& p);

/// c_alpha * integral_{-inf}^{t_start} p(tau) (t_eval - tau)^{-1-alpha} dtau.
/// Exact closed form beyond an eventually-constant cutoff, adaptive
/// quadrature (dyadic windows for bounded/slow-growth tails) elsewhere.
/// Throws for power growth with exponent >= alpha (divergent).
double prehistory_data_integral(const FunctionDescriptor& p, double t_start,
                                double t_eval, const FracParams& params,
                                const TimeQuadratureConfig& cfg,
                                double scale = 1.0);

/// One-sided singular-integral time derivative of order alpha evaluated at
/// t_eval (a stored level or any point inside the sampled range): exact
/// piecewise-linear closed forms on the sampled segment, adaptive quadrature
/// plus analytic constant tail on the prehistory.
double marchaud(const TimeTrace& trace, double t_eval, const FracParams& params,
                const TimeQuadratureConfig& cfg = {});

}  // namespace fracdual
