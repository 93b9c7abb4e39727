#pragma once

#include <cmath>
#include <stdexcept>

namespace fracdual {

/// Orders (alpha, s) of the dual operator together with the derived
/// normalization constants. Immutable after construction.
///
/// c_alpha = alpha / Gamma(1 - alpha) normalizes the one-sided singular
/// time kernel. c_ns is the constant under which the nonlocal spatial
/// operator has Fourier symbol |xi|^{2s}:
///   c_ns = 4^s * Gamma(dim/2 + s) * s / (pi^{dim/2} * Gamma(1 - s)),
/// using |Gamma(-s)| = Gamma(1 - s) / s.
struct FracParams {
  double alpha;
  double s;
  int dim;
  double c_alpha;
  double c_ns;

  static FracParams make(double alpha, double s, int dim = 1) {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("FracParams: alpha must lie in (0,1)");
    if (!(s > 0.0 && s < 1.0))
      throw std::invalid_argument("FracParams: s must lie in (0,1)");
    if (dim != 1 && dim != 2)
      throw std::invalid_argument("FracParams: dim must be 1 or 2");
    FracParams p;
    p.alpha = alpha;
    p.s = s;
    p.dim = dim;
    p.c_alpha = alpha / std::tgamma(1.0 - alpha);
    const double half_dim = 0.5 * static_cast<double>(dim);
    p.c_ns = std::pow(4.0, s) * std::tgamma(half_dim + s) * s /
             (std::pow(M_PI, half_dim) * std::tgamma(1.0 - s));
    return p;
  }
};

}  // namespace fracdual
