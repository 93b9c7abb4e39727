#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracdual {

enum class ReactionFamily { zero, affine, logistic_like, cubic };

/// Reaction term f(u) of the evolution equation. The helper predicates
/// expose f(0) >= 0, f'(0) <= 0 and sup f' < inf so experiments can check
/// the monotonicity theorem's hypotheses on the nonlinearity.
struct ReactionSpec {
  ReactionFamily family = ReactionFamily::zero;
  std::vector<double> params;  // affine: {a, b} -> a + b*u; logistic_like:
                               // {a} -> a - u; cubic: {a} -> a*u - u^3

  static ReactionSpec zero() { return {ReactionFamily::zero, {}}; }
  static ReactionSpec affine(double a, double b) {
    return {ReactionFamily::affine, {a, b}};
  }
  static ReactionSpec logistic_like(double a) {
    return {ReactionFamily::logistic_like, {a}};
  }
  static ReactionSpec cubic(double a) { return {ReactionFamily::cubic, {a}}; }

  double operator()(double u) const {
    switch (family) {
      case ReactionFamily::zero: return 0.0;
      case ReactionFamily::affine: return params[0] + params[1] * u;
      case ReactionFamily::logistic_like: return params[0] - u;
      case ReactionFamily::cubic: return params[0] * u - u * u * u;
    }
    return 0.0;
  }

  double derivative(double u) const {
    switch (family) {
      case ReactionFamily::zero: return 0.0;
      case ReactionFamily::affine: return params[1];
      case ReactionFamily::logistic_like: return -1.0;
      case ReactionFamily::cubic: return params[0] - 3.0 * u * u;
    }
    return 0.0;
  }

  double f_at_zero() const { return (*this)(0.0); }
  double fprime_at_zero() const { return derivative(0.0); }
  double sup_fprime() const {
    switch (family) {
      case ReactionFamily::zero: return 0.0;
      case ReactionFamily::affine: return params[1];
      case ReactionFamily::logistic_like: return -1.0;
      case ReactionFamily::cubic: return params[0];  // f' = a - 3u^2 <= a
    }
    return 0.0;
  }

  bool monotonicity_hypotheses() const {
    return f_at_zero() >= 0.0 && fprime_at_zero() <= 0.0 &&
           std::isfinite(sup_fprime());
  }

  static const char* family_name(ReactionFamily f) {
    switch (f) {
      case ReactionFamily::zero: return "zero";
      case ReactionFamily::affine: return "affine";
      case ReactionFamily::logistic_like: return "logistic_like";
      case ReactionFamily::cubic: return "cubic";
    }
    return "?";
  }
  static ReactionFamily family_from_name(const std::string& n) {
    if (n == "zero") return ReactionFamily::zero;
    if (n == "affine") return ReactionFamily::affine;
    if (n == "logistic_like") return ReactionFamily::logistic_like;
    if (n == "cubic") return ReactionFamily::cubic;
    throw std::invalid_argument("unknown reaction family: " + n);
  }
};

}  // namespace fracdual
