#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracdual/cli/config.hpp"
#include "fracdual/core/field.hpp"
#include "fracdual/core/geometry.hpp"
#include "fracdual/core/params.hpp"

using namespace fracdual;

TEST_CASE("FracParams derived constants") {
  auto p = FracParams::make(0.5, 0.5);
  CHECK(p.c_alpha == doctest::Approx(0.5 / std::tgamma(0.5)).epsilon(1e-14));
  // Fourier-symbol normalization reduces to 1/pi in 1-D at s = 1/2.
  CHECK(p.c_ns == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
  CHECK(p.c_alpha > 0.0);
  CHECK(p.c_ns > 0.0);

  auto q = FracParams::make(0.3, 0.7, 2);
  CHECK(q.c_alpha == doctest::Approx(0.3 / std::tgamma(0.7)).epsilon(1e-14));
  const double expect_cns = std::pow(4.0, 0.7) * std::tgamma(1.0 + 0.7) * 0.7 /
                            (M_PI * std::tgamma(0.3));
  CHECK(q.c_ns == doctest::Approx(expect_cns).epsilon(1e-14));

  CHECK_THROWS_AS(FracParams::make(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(FracParams::make(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(FracParams::make(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(FracParams::make(0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(FracParams::make(1.2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(FracParams::make(0.5, 0.5, 3), std::invalid_argument);
}

TEST_CASE("reflect_point examples and involution") {
  Point a(1.0, 0.0);
  Point r = reflect_point(a, 2.0);
  CHECK(r.x[0] == doctest::Approx(3.0));
  CHECK(r.x[1] == doctest::Approx(0.0));

  Point on_plane(2.0, -1.3);
  Point fixed = reflect_point(on_plane, 2.0);
  CHECK(fixed.x[0] == 2.0);
  CHECK(fixed.x[1] == -1.3);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-50.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    Point x(U(rng), U(rng));
    const double lam = U(rng);
    Point rr = reflect_point(reflect_point(x, lam), lam);
    // Involution to rounding; the lattice index map is exact (tested with
    // the grid below).
    const double scale = std::max({1.0, std::abs(x.x[0]), 2.0 * std::abs(lam)});
    CHECK(std::abs(rr.x[0] - x.x[0]) <= 1e-15 * scale);
    CHECK(rr.x[1] == x.x[1]);
  }
}

TEST_CASE("SpaceGrid spacing, masks, reflection map") {
  auto g = SpaceGrid::make_1d(0.0, 20.0, 201, DomainKind::half_space_truncation,
                              0.0, 20.0);
  CHECK(g.h == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(g.node(0).x1() == doctest::Approx(0.0));
  CHECK(g.node(200).x1() == doctest::Approx(20.0));
  CHECK_FALSE(g.is_interior(0));
  CHECK_FALSE(g.is_interior(200));
  CHECK(g.is_interior(1));
  CHECK(g.is_interior(100));

  auto slab = SpaceGrid::make_1d(0.0, 6.0, 61, DomainKind::slab, 5.0, 6.0);
  for (std::size_t i = 0; i < slab.node_count(); ++i) {
    const double x = slab.node(i).x1();
    CHECK(slab.is_interior(i) == (x > 5.0 && x < 6.0));
  }

  auto ball = SpaceGrid::make_1d(-2.0, 2.0, 41, DomainKind::ball, 0.0, 1.0);
  for (std::size_t i = 0; i < ball.node_count(); ++i)
    CHECK(ball.is_interior(i) == (std::abs(ball.node(i).x1()) < 1.0));

  CHECK(g.reflection_is_lattice_exact(5.0));
  CHECK(g.reflection_is_lattice_exact(5.05));
  CHECK_FALSE(g.reflection_is_lattice_exact(5.013));
  const long ir = g.reflected_node(40, 5.0);  // x = 4 -> x = 6
  REQUIRE(ir >= 0);
  CHECK(g.node(static_cast<std::size_t>(ir)).x1() == doctest::Approx(6.0));
  CHECK(g.reflected_node(static_cast<std::size_t>(ir), 5.0) == 40);
  CHECK(g.reflected_node(0, 15.0) < 0);  // image of x=0 at x=30: off grid

  CHECK_THROWS_AS(SpaceGrid::make_1d(0.0, 1.0, 1, DomainKind::interval, 0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(SpaceGrid::make_1d(1.0, 0.0, 11, DomainKind::interval, 0, 1),
                  std::invalid_argument);

  auto g2 = SpaceGrid::make_2d(-1.0, 1.0, 21, DomainKind::ball, {0.0, 0.0},
                               {0.5, 0.0});
  CHECK(g2.node_count() == 441);
  std::size_t n_int = 0;
  for (std::size_t i = 0; i < g2.node_count(); ++i)
    if (g2.is_interior(i)) ++n_int;
  CHECK(n_int > 0);
  CHECK(n_int < g2.node_count());
}

TEST_CASE("FunctionDescriptor families and tails") {
  auto u = FunctionDescriptor::counterexample(100.0);
  CHECK(u(M_PI / 2.0) == doctest::Approx(1.0));
  CHECK(u(-105.0) == doctest::Approx(-100.0));
  CHECK(u(3.0 * M_PI / 2.0) == doctest::Approx(-1.0));
  CHECK(u(0.0) == doctest::Approx(0.0));   // continuous gluing
  CHECK(u(-100.0) == doctest::Approx(-100.0));

  // Declared tails are honored exactly for eventually constant families.
  CHECK(u(-1e6) == -100.0);
  auto gauss = FunctionDescriptor::gaussian_bump(2.0, 1.0, 0.5);
  CHECK(gauss.tail.kind == TailKind::eventually_constant);
  CHECK(std::abs(gauss(gauss.tail.cutoff + 5.0)) < 1e-300);

  auto eta = FunctionDescriptor::cutoff(0.0, 1.0);
  CHECK(eta(0.0) == 1.0);
  CHECK(eta(2.5) == 0.0);
  CHECK(eta(1.5) == doctest::Approx(0.5).epsilon(1e-15));

  auto tab = FunctionDescriptor::tabulated(0.0, 1.0, {0.0, 1.0, 4.0},
                                           TailClass::bounded(4.0));
  CHECK(tab(0.5) == doctest::Approx(0.5));
  CHECK(tab(1.5) == doctest::Approx(2.5));
  CHECK(tab(-3.0) == doctest::Approx(0.0));  // end clamped
  CHECK(tab(9.0) == doctest::Approx(4.0));

  CHECK_THROWS_AS(FunctionDescriptor::counterexample(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(FunctionDescriptor(Family::sine, {1.0}, TailClass::bounded(1)),
                  std::invalid_argument);
}

TEST_CASE("FunctionDescriptor reflection closure") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  std::vector<FunctionDescriptor> fams = {
      FunctionDescriptor::constant(2.5),
      FunctionDescriptor::linear(1.0, -0.7),
      FunctionDescriptor::sine(0.8, 1.7, 0.3),
      FunctionDescriptor::exponential(1.2, 0.4),
      FunctionDescriptor::gaussian_bump(1.0, 0.8, 0.6),
      FunctionDescriptor::ball_barrier(0.5, 1.2, 0.5),
      FunctionDescriptor::slab_barrier(2.0, 0.5, 0.4, 0.5),
      FunctionDescriptor::cutoff(0.3, 1.1),
      FunctionDescriptor::tabulated(-1.0, 0.5, {0.0, 2.0, 1.0, 3.0},
                                    TailClass::bounded(3.0)),
  };
  for (const auto& f : fams) {
    const double lam = 1.3;
    auto fr = f.reflected(lam);
    for (int i = 0; i < 50; ++i) {
      const double x = U(rng);
      CHECK(fr(x) == doctest::Approx(f(2.0 * lam - x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("antisymmetric difference of a linear field") {
  auto g = SpaceGrid::make_1d(0.0, 2.0, 21, DomainKind::interval, 0.0, 2.0);
  HistoryField u(g, 0.0, 0.5, SpaceTimeFn::zero(),
                 SpaceTimeFn::of_space(FunctionDescriptor::linear(0.0, 1.0)));
  for (int l = 0; l < 3; ++l) {
    std::vector<double> v(g.node_count());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = g.node(i).x1();
    u.push_level(std::move(v));
  }
  auto w = antisymmetric_difference(u, 1.0);
  for (std::size_t i = 0; i < w.grid.node_count(); ++i) {
    const double x = w.grid.node(i).x1();
    CHECK(w.levels[0][i] == doctest::Approx(2.0 * (1.0 - x)).epsilon(1e-13));
  }
}

TEST_CASE("antisymmetric difference: even field vanishes, cubic pointwise") {
  auto g = SpaceGrid::make_1d(-1.0, 3.0, 41, DomainKind::interval, -1.0, 3.0);
  HistoryField even(g, 0.0, 1.0, SpaceTimeFn::zero(), SpaceTimeFn::zero());
  HistoryField cubic(g, 0.0, 1.0, SpaceTimeFn::zero(), SpaceTimeFn::zero());
  std::vector<double> ve(g.node_count()), vc(g.node_count());
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const double x = g.node(i).x1();
    ve[i] = std::cos(x - 1.0);  // even about lambda = 1
    vc[i] = x * x * x;
  }
  even.push_level(ve);
  cubic.push_level(vc);

  auto we = antisymmetric_difference(even, 1.0);
  for (std::size_t i = 0; i < we.grid.node_count(); ++i)
    CHECK(std::abs(we.levels[0][i]) < 1e-14);

  auto wc = antisymmetric_difference(cubic, 1.0);
  // At x = 0: u(2-0) - u(0) = 8; cross-check against direct evaluation.
  const auto i0 = static_cast<std::size_t>(std::llround((0.0 + 1.0) / g.h));
  CHECK(wc.levels[0][i0] == doctest::Approx(8.0).epsilon(1e-13));
  for (std::size_t i = 0; i < wc.grid.node_count(); ++i) {
    const double x = wc.grid.node(i).x1();
    const double direct = std::pow(2.0 - x, 3) - std::pow(x, 3);
    CHECK(wc.levels[0][i] == doctest::Approx(direct).epsilon(1e-12));
  }

  // Antisymmetry at sampled pairs is exact for lattice reflections.
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const long ir = g.reflected_node(i, 1.0);
    if (ir < 0) continue;
    const double w_here = vc[static_cast<std::size_t>(ir)] - vc[i];
    const double w_there = vc[i] - vc[static_cast<std::size_t>(ir)];
    CHECK(w_here + w_there == 0.0);
  }

  CHECK_THROWS_AS(antisymmetric_difference(cubic, 5.0), std::invalid_argument);
}

TEST_CASE("off-lattice reflection: interpolated deficit tracks the analytic one") {
  auto g = SpaceGrid::make_1d(0.0, 4.0, 81, DomainKind::interval, 0.0, 4.0);
  HistoryField u(g, 0.0, 1.0, SpaceTimeFn::zero(), SpaceTimeFn::zero());
  std::vector<double> v(g.node_count());
  auto f = [](double x) { return std::sin(1.3 * x) + 0.2 * x; };
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g.node(i).x1());
  u.push_level(v);

  const double lambda = 1.337;  // not lattice-compatible
  REQUIRE_FALSE(g.reflection_is_lattice_exact(lambda));
  auto w = antisymmetric_difference(u, lambda);
  const double interp_tol = 2.0 * g.h * g.h;  // O(h^2 u'') slack
  for (std::size_t i = 0; i < w.grid.node_count(); ++i) {
    const double x = w.grid.node(i).x1();
    const double analytic = f(2.0 * lambda - x) - f(x);
    CHECK(std::abs(w.levels[0][i] - analytic) < interp_tol);
  }
}

TEST_CASE("growth_check") {
  using Sample = std::pair<Point, double>;
  std::vector<Sample> nonneg = {{Point(0.0), 1.0}, {Point(3.0), 0.5}};
  CHECK(growth_check(nonneg, 0.5).c_fit == 0.0);

  std::vector<Sample> exact;
  for (double x = 0.0; x <= 10.0; x += 0.5)
    exact.emplace_back(Point(x), -std::pow(std::abs(x), 0.7));
  auto fit = growth_check(exact, 0.7);
  CHECK(fit.c_fit <= 1.0 + 1e-12);

  // Brute-force oracle: C = max over samples of |x|^2 / (1 + |x|^gamma).
  std::vector<Sample> quad;
  double brute = 0.0;
  for (double x = 0.0; x <= 10.0; x += 0.25) {
    quad.emplace_back(Point(x), -x * x);
    brute = std::max(brute, x * x / (1.0 + std::pow(x, 0.9)));
  }
  auto fit2 = growth_check(quad, 0.9);
  CHECK(fit2.c_fit == doctest::Approx(brute).epsilon(1e-12));
  CHECK(growth_check(quad, 0.9, brute + 1.0).satisfied);
  CHECK_FALSE(growth_check(quad, 0.9, brute * 0.5).satisfied);

  CHECK_THROWS_AS(growth_check({}, 0.5), std::invalid_argument);
}

TEST_CASE("HistoryField invariants") {
  auto g = SpaceGrid::make_1d(0.0, 1.0, 11, DomainKind::interval, 0.0, 1.0);
  CHECK_THROWS_AS(HistoryField(g, 0.0, -0.1, SpaceTimeFn::zero(),
                               SpaceTimeFn::zero()),
                  std::invalid_argument);
  HistoryField f(g, 0.0, 0.1, SpaceTimeFn::zero(),
                 SpaceTimeFn::of_space(FunctionDescriptor::constant(0.7)));
  CHECK_THROWS_AS(f.push_level(std::vector<double>(5, 0.0)),
                  std::invalid_argument);
  f.seed_initial_level();
  // Exterior-masked nodes carry the written exterior values exactly.
  CHECK(f.levels[0][0] == 0.7);
  CHECK(f.levels[0][10] == 0.7);
  CHECK(f.levels[0][5] == 0.0);
  CHECK(f.eval_space(0.55, 0, 0.0) == doctest::Approx(0.0));
  CHECK(f.eval_space(7.0, 0, 0.0) == doctest::Approx(0.7));
}

TEST_CASE("descriptor serialization round trip") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> U(-4.0, 4.0);
  std::vector<FunctionDescriptor> fams = {
      FunctionDescriptor::constant(-1.25),
      FunctionDescriptor::sine(0.5, 2.0, -0.25),
      FunctionDescriptor::counterexample(50.0),
      FunctionDescriptor::slab_barrier(3.0, 0.25, 0.3, 0.6),
      FunctionDescriptor::tabulated(0.0, 0.5, {1.0, 0.0, 2.0},
                                    TailClass::power_growth(0.4)),
  };
  for (const auto& f : fams) {
    auto g = descriptor_from_json_text(descriptor_to_json_text(f));
    CHECK(g.family == f.family);
    CHECK(g.tail.kind == f.tail.kind);
    for (int i = 0; i < 30; ++i) {
      const double x = U(rng);
      CHECK(g(x) == doctest::Approx(f(x)).epsilon(1e-14));
    }
  }
}
