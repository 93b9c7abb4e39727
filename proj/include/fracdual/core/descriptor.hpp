#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracdual/core/grid.hpp"

namespace fracdual {

enum class Family {
  constant,
  linear,
  sine,
  exponential,
  gaussian_bump,
  ball_barrier_phi,
  slab_barrier_h,
  cutoff_eta,
  counterexample_u,
  tabulated,
};

enum class TailKind { eventually_constant, bounded, power_growth };

/// Declared behavior of a function beyond |argument| -> infinity. For time
/// functions only the left tail (t -> -infinity) matters; for space
/// functions the declaration covers both directions and tail corrections
/// probe the descriptor itself for per-side far values.
struct TailClass {
  TailKind kind = TailKind::bounded;
  double value = 0.0;   // constant value / bound / growth exponent gamma
  double cutoff = 0.0;  // |arg| beyond which eventually_constant applies

  static TailClass eventually_constant(double v, double cutoff) {
    return TailClass{TailKind::eventually_constant, v, cutoff};
  }
  static TailClass bounded(double b) { return TailClass{TailKind::bounded, b, 0.0}; }
  static TailClass power_growth(double gamma) {
    return TailClass{TailKind::power_growth, gamma, 0.0};
  }
};

/// Smooth bump transition used by the cutoff family: 1 on [-1,1], 0 outside
/// (-2,2), built from the exp(-1/xi) smoothstep on each shoulder. All
/// derivatives vanish at the gluing points.
inline double smooth_cutoff_eta(double t) {
  const double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double u = 2.0 - a;  // in (0,1): 0 at the outer edge, 1 at the plateau
  const double g = std::exp(-1.0 / u);
  const double gc = std::exp(-1.0 / (1.0 - u));
  return g / (g + gc);
}

/// Analytic function family with parameters and a declared tail. Evaluation
/// is defined for every real argument. Used for time traces (prehistory),
/// exterior space data, and oracle targets.
///
/// Parameter layout per family:
///   constant          [c]
///   linear            [a, b]            a + b*x1
///   sine              [amp, freq, phase]
///   exponential       [amp, rate]       amp * exp(rate * x1)
///   gaussian_bump     [amp, c1, (c2), sigma]
///   ball_barrier_phi  [x01, (x02), r, s]
///   slab_barrier_h    [lambda, l, beta, s]
///   cutoff_eta        [center, scale]   eta((t - center)/scale)
///   counterexample_u  [R]
///   tabulated         [x0, dx, v0, v1, ...]  linear interp, end-clamped
class FunctionDescriptor {
 public:
  Family family = Family::constant;
  std::vector<double> params{0.0};
  TailClass tail = TailClass::eventually_constant(0.0, 0.0);

  FunctionDescriptor() = default;
  FunctionDescriptor(Family f, std::vector<double> p, TailClass t)
      : family(f), params(std::move(p)), tail(t) {
    validate();
  }

  static FunctionDescriptor constant(double c) {
    return {Family::constant, {c}, TailClass::eventually_constant(c, 0.0)};
  }
  static FunctionDescriptor linear(double a, double b) {
    return {Family::linear, {a, b}, TailClass::power_growth(1.0)};
  }
  static FunctionDescriptor sine(double amp, double freq, double phase) {
    return {Family::sine, {amp, freq, phase}, TailClass::bounded(std::abs(amp))};
  }
  static FunctionDescriptor exponential(double amp, double rate) {
    // Left tail decays to 0 for rate > 0; declare bounded on the past.
    return {Family::exponential, {amp, rate}, TailClass::bounded(std::abs(amp))};
  }
  static FunctionDescriptor gaussian_bump(double amp, double center, double sigma) {
    return {Family::gaussian_bump, {amp, center, sigma},
            TailClass::eventually_constant(0.0, std::abs(center) + 12.0 * sigma)};
  }
  static FunctionDescriptor gaussian_bump_2d(double amp, double c1, double c2,
                                             double sigma) {
    return {Family::gaussian_bump, {amp, c1, c2, sigma},
            TailClass::eventually_constant(0.0, std::hypot(c1, c2) + 12.0 * sigma)};
  }
  static FunctionDescriptor ball_barrier(double x0, double r, double s) {
    return {Family::ball_barrier_phi, {x0, r, s},
            TailClass::eventually_constant(0.0, std::abs(x0) + r)};
  }
  static FunctionDescriptor ball_barrier_2d(double x01, double x02, double r,
                                            double s) {
    return {Family::ball_barrier_phi, {x01, x02, r, s},
            TailClass::eventually_constant(0.0, std::hypot(x01, x02) + r)};
  }
  static FunctionDescriptor slab_barrier(double lambda, double l, double beta,
                                         double s) {
    return {Family::slab_barrier_h, {lambda, l, beta, s},
            TailClass::power_growth(beta)};
  }
  static FunctionDescriptor cutoff(double center, double scale) {
    return {Family::cutoff_eta, {center, scale},
            TailClass::eventually_constant(0.0, std::abs(center) + 2.0 * scale)};
  }
  static FunctionDescriptor counterexample(double R) {
    if (!(R > 0.0)) throw std::invalid_argument("counterexample: R must be > 0");
    return {Family::counterexample_u, {R}, TailClass::eventually_constant(-R, R)};
  }
  static FunctionDescriptor tabulated(double x0, double dx,
                                      std::vector<double> values,
                                      TailClass tail) {
    if (values.size() < 2 || !(dx > 0.0))
      throw std::invalid_argument("tabulated: need dx > 0 and >= 2 values");
    std::vector<double> p{x0, dx};
    p.insert(p.end(), values.begin(), values.end());
    return {Family::tabulated, std::move(p), tail};
  }

  double operator()(double arg) const { return eval1(arg); }
  double at_time(double t) const { return eval1(t); }

  double at_point(const Point& p) const {
    switch (family) {
      case Family::gaussian_bump: {
        if (params.size() == 4 && p.dim == 2) {
          const double dx = p.x[0] - params[1], dy = p.x[1] - params[2];
          const double sig = params[3];
          const double d2 = dx * dx + dy * dy;
          if (d2 >= 144.0 * sig * sig) return 0.0;  // exact declared tail
          return params[0] * std::exp(-d2 / (2.0 * sig * sig));
        }
        return eval1(p.x[0]);
      }
      case Family::ball_barrier_phi: {
        if (params.size() == 4 && p.dim == 2) {
          const double dx = p.x[0] - params[0], dy = p.x[1] - params[1];
          const double r = params[2], s = params[3];
          const double q = 1.0 - (dx * dx + dy * dy) / (r * r);
          return q > 0.0 ? std::pow(q, s) : 0.0;
        }
        return eval1(p.x[0]);
      }
      case Family::slab_barrier_h: {
        const double lambda = params[0], l = params[1], beta = params[2],
                     s = params[3];
        const double d = p.x[0] - (lambda - l);
        const double q = 1.0 - d * d / (l * l);
        const double bump = q > 0.0 ? std::pow(q, s) : 0.0;
        const double xp2 = p.dim == 2 ? p.x[1] * p.x[1] : 0.0;
        return (bump + 1.0) * std::pow(1.0 + xp2, 0.5 * beta);
      }
      default:
        return eval1(p.x[0]);
    }
  }

  /// Argument values where the function is not smooth (kinks / Hoelder
  /// points); quadrature refines panels around these.
  std::vector<double> nonsmooth_points() const {
    switch (family) {
      case Family::ball_barrier_phi:
        if (params.size() == 4)
          return {};  // 2-D locus is a circle; handled radially by the caller
        return {params[0] - params[1], params[0] + params[1]};
      case Family::slab_barrier_h: {
        const double lambda = params[0], l = params[1];
        return {lambda - 2.0 * l, lambda};
      }
      case Family::cutoff_eta: {
        const double c = params[0], sc = params[1];
        return {c - 2.0 * sc, c - sc, c + sc, c + 2.0 * sc};
      }
      case Family::counterexample_u:
        return {-params[0], 0.0};
      case Family::tabulated: {
        std::vector<double> k;
        const std::size_t m = params.size() - 2;
        k.reserve(m);
        for (std::size_t i = 0; i < m; ++i)
          k.push_back(params[0] + static_cast<double>(i) * params[1]);
        return k;
      }
      default:
        return {};
    }
  }

  /// Descriptor of x |-> f(2*lambda - x1, x'). Every family is closed under
  /// this reflection.
  FunctionDescriptor reflected(double lambda) const {
    const double L2 = 2.0 * lambda;
    switch (family) {
      case Family::constant:
        return *this;
      case Family::linear:
        return {family, {params[0] + params[1] * L2, -params[1]}, tail};
      case Family::sine:
        // amp*sin(f*(2L-x)+p) = -amp*sin(f*x - (2Lf+p))
        return {family, {-params[0], params[1], -(L2 * params[1] + params[2])}, tail};
      case Family::exponential:
        return {family, {params[0] * std::exp(params[1] * L2), -params[1]}, tail};
      case Family::gaussian_bump: {
        auto p = params;
        p[1] = L2 - p[1];
        return {family, p, tail};
      }
      case Family::ball_barrier_phi: {
        auto p = params;
        p[0] = L2 - p[0];
        return {family, p, tail};
      }
      case Family::slab_barrier_h: {
        // Bump center lambda0 - l reflects; width and the |x'| factor keep.
        auto p = params;
        p[0] = L2 - params[0] + 2.0 * params[1];
        return {family, p, tail};
      }
      case Family::cutoff_eta: {
        auto p = params;
        p[0] = L2 - p[0];
        return {family, p, tail};
      }
      case Family::counterexample_u:
        throw std::logic_error("counterexample_u is a time trace; no spatial reflection");
      case Family::tabulated: {
        const std::size_t m = params.size() - 2;
        std::vector<double> vals(params.begin() + 2, params.end());
        std::reverse(vals.begin(), vals.end());
        const double x_last = params[0] + static_cast<double>(m - 1) * params[1];
        std::vector<double> p{L2 - x_last, params[1]};
        p.insert(p.end(), vals.begin(), vals.end());
        return {family, p, tail};
      }
    }
    throw std::logic_error("unreachable");
  }

  /// Descriptor of c * f. Tail scales accordingly.
  FunctionDescriptor scaled(double c) const {
    FunctionDescriptor d = *this;
    switch (family) {
      case Family::constant:
        d.params[0] *= c;
        break;
      case Family::linear:
        d.params[0] *= c;
        d.params[1] *= c;
        break;
      case Family::sine:
      case Family::exponential:
      case Family::gaussian_bump:
        d.params[0] *= c;
        break;
      case Family::tabulated:
        for (std::size_t i = 2; i < d.params.size(); ++i) d.params[i] *= c;
        break;
      default:
        throw std::logic_error("scaled: unsupported family");
    }
    if (d.tail.kind != TailKind::power_growth) d.tail.value *= c;
    if (d.tail.kind == TailKind::bounded) d.tail.value = std::abs(d.tail.value);
    return d;
  }

  static const char* family_name(Family f) {
    switch (f) {
      case Family::constant: return "constant";
      case Family::linear: return "linear";
      case Family::sine: return "sine";
      case Family::exponential: return "exponential";
      case Family::gaussian_bump: return "gaussian_bump";
      case Family::ball_barrier_phi: return "ball_barrier_phi";
      case Family::slab_barrier_h: return "slab_barrier_h";
      case Family::cutoff_eta: return "cutoff_eta";
      case Family::counterexample_u: return "counterexample_u";
      case Family::tabulated: return "tabulated";
    }
    return "?";
  }

  static Family family_from_name(const std::string& name) {
    for (int f = 0; f <= static_cast<int>(Family::tabulated); ++f)
      if (name == family_name(static_cast<Family>(f))) return static_cast<Family>(f);
    throw std::invalid_argument("unknown function family: " + name);
  }

 private:
  void validate() const {
    const std::size_t np = params.size();
    switch (family) {
      case Family::constant:
        if (np != 1) throw std::invalid_argument("constant: 1 param");
        break;
      case Family::linear:
        if (np != 2) throw std::invalid_argument("linear: 2 params");
        break;
      case Family::sine:
        if (np != 3) throw std::invalid_argument("sine: 3 params");
        break;
      case Family::exponential:
        if (np != 2) throw std::invalid_argument("exponential: 2 params");
        break;
      case Family::gaussian_bump:
        if (np != 3 && np != 4) throw std::invalid_argument("gaussian_bump: 3 or 4 params");
        if (!(params.back() > 0.0)) throw std::invalid_argument("gaussian_bump: sigma > 0");
        break;
      case Family::ball_barrier_phi:
        if (np != 3 && np != 4) throw std::invalid_argument("ball_barrier_phi: 3 or 4 params");
        if (!(params[np - 2] > 0.0)) throw std::invalid_argument("ball_barrier_phi: r > 0");
        break;
      case Family::slab_barrier_h:
        if (np != 4) throw std::invalid_argument("slab_barrier_h: 4 params");
        if (!(params[1] > 0.0)) throw std::invalid_argument("slab_barrier_h: l > 0");
        break;
      case Family::cutoff_eta:
        if (np != 2 || !(params[1] > 0.0))
          throw std::invalid_argument("cutoff_eta: [center, scale>0]");
        break;
      case Family::counterexample_u:
        if (np != 1 || !(params[0] > 0.0))
          throw std::invalid_argument("counterexample_u: [R>0]");
        break;
      case Family::tabulated:
        if (np < 4 || !(params[1] > 0.0))
          throw std::invalid_argument("tabulated: [x0, dx>0, >=2 values]");
        break;
    }
  }

  double eval1(double x) const {
    switch (family) {
      case Family::constant:
        return params[0];
      case Family::linear:
        return params[0] + params[1] * x;
      case Family::sine:
        return params[0] * std::sin(params[1] * x + params[2]);
      case Family::exponential:
        return params[0] * std::exp(params[1] * x);
      case Family::gaussian_bump: {
        const double d = x - params[1];
        const double sig = params.size() == 4 ? params[3] : params[2];
        if (std::abs(d) >= 12.0 * sig) return 0.0;  // exact declared tail
        return params[0] * std::exp(-d * d / (2.0 * sig * sig));
      }
      case Family::ball_barrier_phi: {
        const double d = x - params[0];
        const double r = params.size() == 4 ? params[2] : params[1];
        const double s = params.back();
        const double q = 1.0 - d * d / (r * r);
        return q > 0.0 ? std::pow(q, s) : 0.0;
      }
      case Family::slab_barrier_h:
        return at_point(Point(x));
      case Family::cutoff_eta:
        return smooth_cutoff_eta((x - params[0]) / params[1]);
      case Family::counterexample_u: {
        const double R = params[0];
        if (x > 0.0) return std::sin(x);
        if (x > -R) return x;
        return -R;
      }
      case Family::tabulated: {
        const double x0 = params[0], dx = params[1];
        const std::size_t m = params.size() - 2;
        const double pos = (x - x0) / dx;
        if (pos <= 0.0) return params[2];
        if (pos >= static_cast<double>(m - 1)) return params[2 + m - 1];
        const std::size_t i = static_cast<std::size_t>(pos);
        const double theta = pos - static_cast<double>(i);
        return params[2 + i] * (1.0 - theta) + params[2 + i + 1] * theta;
      }
    }
    return 0.0;
  }
};

/// Separable space-time function: value(x, t) = space(x) * time(t). The
/// only space-time form the library needs; reflections and antisymmetric
/// differences stay within it because the time factor is shared.
struct SpaceTimeFn {
  FunctionDescriptor space = FunctionDescriptor::constant(1.0);
  FunctionDescriptor time = FunctionDescriptor::constant(1.0);

  double operator()(const Point& x, double t) const {
    return space.at_point(x) * time.at_time(t);
  }

  static SpaceTimeFn zero() {
    return {FunctionDescriptor::constant(0.0), FunctionDescriptor::constant(1.0)};
  }
  static SpaceTimeFn of_space(FunctionDescriptor s) {
    return {std::move(s), FunctionDescriptor::constant(1.0)};
  }
  static SpaceTimeFn of_time(FunctionDescriptor t) {
    return {FunctionDescriptor::constant(1.0), std::move(t)};
  }
};

}  // namespace fracdual
