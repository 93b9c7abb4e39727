#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracdual/frac_space/barriers.hpp"
#include "fracdual/frac_space/frac_laplacian.hpp"
#include "oracles.hpp"

using namespace fracdual;

namespace {

GridField sine_field(const SpaceGrid& grid, std::vector<double>& storage,
                     const FunctionDescriptor& ext) {
  storage.resize(grid.node_count());
  for (std::size_t i = 0; i < storage.size(); ++i)
    storage[i] = std::sin(grid.node(i).x1());
  return GridField{&grid, &storage, &ext};
}

}  // namespace

TEST_CASE("Fourier symbol: the unit-frequency sine is an eigenfunction") {
  auto p = FracParams::make(0.5, 0.5);
  SpaceQuadratureConfig cfg;
  cfg.z_max = 200.0;
  FunctionDescriptor sine = FunctionDescriptor::sine(1.0, 1.0, 0.0);
  for (double x : {0.3, 1.0, 2.0, -0.7}) {
    const double v = frac_laplacian(sine, Point(x), p, cfg, 1e-2);
    CHECK(v == doctest::Approx(std::sin(x)).epsilon(0.01));
  }
  for (double s : {0.3, 0.7}) {
    auto ps = FracParams::make(0.5, s);
    const double v = frac_laplacian(sine, Point(0.3), ps, cfg, 1e-2);
    CHECK(v == doctest::Approx(std::sin(0.3)).epsilon(0.01));
  }
  // Frequency k scales the symbol to k^{2s}.
  FunctionDescriptor sine2 = FunctionDescriptor::sine(1.0, 2.0, 0.0);
  const double v2 = frac_laplacian(sine2, Point(0.4), p, cfg, 1e-2);
  CHECK(v2 == doctest::Approx(2.0 * std::sin(0.8)).epsilon(0.01));
}

TEST_CASE("gaussian closed form at the peak, 1-D and 2-D") {
  SpaceQuadratureConfig cfg;
  FunctionDescriptor g1 = FunctionDescriptor::gaussian_bump(1.0, 0.0, 1.0);
  for (double s : {0.3, 0.5, 0.7}) {
    auto ps = FracParams::make(0.5, s);
    const double exact = std::pow(2.0, s) * std::tgamma(0.5 + s) /
                         std::tgamma(0.5);
    const double v = frac_laplacian(g1, Point(0.0), ps, cfg, 1e-2);
    CHECK(v == doctest::Approx(exact).epsilon(1e-4));
    // Independent brute-force quadrature of the defining integral.
    const double orc = oracle::frac_laplacian_direct(
        [](double x) { return std::exp(-0.5 * x * x); }, 0.0, s, ps.c_ns);
    CHECK(v == doctest::Approx(orc).epsilon(1e-5));
  }
  FunctionDescriptor g2 = FunctionDescriptor::gaussian_bump_2d(1.0, 0.0, 0.0, 1.0);
  for (double s : {0.5, 0.7}) {
    auto ps = FracParams::make(0.5, s, 2);
    const double exact = std::pow(2.0, s) * std::tgamma(1.0 + s);
    SpaceQuadratureConfig c2;
    c2.z_max = 100.0;
    const double v = frac_laplacian(g2, Point(0.0, 0.0), ps, c2, 1e-2);
    CHECK(v == doctest::Approx(exact).epsilon(1e-4));
  }
  // 2-D sine in x1 keeps the 1-D symbol.
  auto p2 = FracParams::make(0.5, 0.5, 2);
  SpaceQuadratureConfig c2;
  c2.z_max = 200.0;
  const double vs = frac_laplacian(FunctionDescriptor::sine(1.0, 1.0, 0.0),
                                   Point(0.3, 0.0), p2, c2, 1e-2);
  CHECK(vs == doctest::Approx(std::sin(0.3)).epsilon(0.01));
}

TEST_CASE("barrier formulas") {
  CHECK(barrier_phi(Point(0.0), Point(0.0), 1.0, 0.5) == 1.0);
  CHECK(barrier_phi(Point(1.0), Point(0.0), 1.0, 0.5) == 0.0);
  CHECK(barrier_phi(Point(0.5), Point(0.0), 1.0, 0.5) ==
        doctest::Approx(0.8660254037844386).epsilon(1e-14));
  CHECK_THROWS_AS(barrier_phi(Point(0.0), Point(0.0), -1.0, 0.5),
                  std::invalid_argument);

  const double lambda = 2.0, l = 0.5;
  CHECK(barrier_h(Point(lambda - l, 0.0), lambda, l, 0.5, 0.5) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(barrier_h(Point(lambda - 3 * l, 0.0), lambda, l, 0.5, 0.5) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(barrier_h(Point(lambda - l, 1.0), lambda, l, 0.5, 0.5) ==
        doctest::Approx(2.3784142300054421).epsilon(1e-14));
  // Always at least the second factor.
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    Point x(U(rng), U(rng));
    const double v = barrier_h(x, lambda, l, 0.5, 0.5);
    CHECK(v >= std::pow(1.0 + x.x[1] * x.x[1], 0.25) - 1e-14);
  }
}

TEST_CASE("ball bump has a constant operator value inside") {
  SpaceQuadratureConfig cfg;
  for (double s : {0.3, 0.5, 0.7}) {
    auto ps = FracParams::make(0.5, s);
    auto r = verify_ball_constancy(1.0, ps, cfg);
    CHECK(r.rel_spread < 0.02);
    // Known closed form under the symbol normalization (cross-check).
    const double exact = std::pow(2.0, 2.0 * s) * std::tgamma(0.5 + s) *
                         std::tgamma(1.0 + s) / std::tgamma(0.5);
    CHECK(r.mean == doctest::Approx(exact).epsilon(5e-3));
    CHECK(r.scaling_ratio_double ==
          doctest::Approx(std::pow(2.0, -2.0 * s)).epsilon(0.02));
    CHECK(r.scaling_ratio_half ==
          doctest::Approx(std::pow(0.5, -2.0 * s)).epsilon(0.02));
  }
  // s = 1/2, r = 1: the constant is exactly 1; brute-force oracle agrees.
  auto p = FracParams::make(0.5, 0.5);
  auto r = verify_ball_constancy(1.0, p, cfg);
  CHECK(r.mean == doctest::Approx(1.0).epsilon(5e-3));
  const double orc = oracle::frac_laplacian_direct(
      [](double x) {
        const double q = 1.0 - x * x;
        return q > 0.0 ? std::sqrt(q) : 0.0;
      },
      0.0, 0.5, p.c_ns, {1.0});
  CHECK(orc == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("grid path matches the symbol and refines at first order") {
  auto p = FracParams::make(0.5, 0.5);
  SpaceQuadratureConfig cfg;
  cfg.z_max = 200.0;
  FunctionDescriptor ext = FunctionDescriptor::sine(1.0, 1.0, 0.0);
  auto coarse = SpaceGrid::make_1d(-10, 10, 1001, DomainKind::interval, -10, 10);
  auto fine = SpaceGrid::make_1d(-10, 10, 2001, DomainKind::interval, -10, 10);
  std::vector<double> vc, vf;
  GridField fc = sine_field(coarse, vc, ext);
  GridField ff = sine_field(fine, vf, ext);
  const double x = 0.3;
  const auto ic = static_cast<std::size_t>(std::llround((x + 10) / coarse.h));
  const auto ifn = static_cast<std::size_t>(std::llround((x + 10) / fine.h));
  const double e_coarse = std::abs(frac_laplacian(fc, ic, p, cfg) - std::sin(x));
  const double e_fine = std::abs(frac_laplacian(ff, ifn, p, cfg) - std::sin(x));
  CHECK(e_coarse < 0.01 * std::abs(std::sin(x)));
  CHECK(e_coarse / e_fine >= 1.3);

  // Boundary nodes carry no stencil.
  CHECK_THROWS_AS(frac_laplacian(fc, 0, p, cfg), std::invalid_argument);
}

TEST_CASE("linearity and translation invariance on random smooth fields") {
  auto p = FracParams::make(0.5, 0.4);
  SpaceQuadratureConfig cfg;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(0.3, 1.5);
  for (int rep = 0; rep < 3; ++rep) {
    const double a1 = U(rng), c1 = U(rng) - 0.9, s1 = U(rng);
    const double a2 = U(rng), c2 = U(rng) - 0.9, s2 = U(rng);
    FunctionDescriptor g1 = FunctionDescriptor::gaussian_bump(a1, c1, s1);
    FunctionDescriptor g2 = FunctionDescriptor::gaussian_bump(a2, c2, s2);
    const double x = 0.2;
    const double va = frac_laplacian(g1, Point(x), p, cfg, 1e-2);
    const double vb = frac_laplacian(g2, Point(x), p, cfg, 1e-2);

    // Linearity through a tabulated combination of the two bumps.
    std::vector<double> tab;
    const double lo = -12.0, dx = 2e-3;
    const auto n = static_cast<std::size_t>(std::llround(24.0 / dx)) + 1;
    tab.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double xv = lo + dx * static_cast<double>(i);
      tab.push_back(g1(xv) + g2(xv));
    }
    FunctionDescriptor sum = FunctionDescriptor::tabulated(
        lo, dx, tab, TailClass::eventually_constant(0.0, 12.0));
    const double vs = frac_laplacian(sum, Point(x), p, cfg, 1e-2);
    CHECK(vs == doctest::Approx(va + vb).epsilon(5e-3));

    // Translation invariance.
    const double shift = 3.7;
    FunctionDescriptor g1s = FunctionDescriptor::gaussian_bump(a1, c1 + shift, s1);
    const double vt = frac_laplacian(g1s, Point(x + shift), p, cfg, 1e-2);
    CHECK(vt == doctest::Approx(va).epsilon(1e-6));
  }
}

TEST_CASE("dilation covariance within two percent") {
  auto p = FracParams::make(0.5, 0.5);
  SpaceQuadratureConfig cfg;
  FunctionDescriptor g = FunctionDescriptor::gaussian_bump(1.0, 0.0, 1.0);
  const double x = 0.4;
  const double base = frac_laplacian(g, Point(x), p, cfg, 1e-2);
  for (double L : {0.5, 2.0}) {
    // u(./L) is a gaussian with width L*sigma.
    FunctionDescriptor gl = FunctionDescriptor::gaussian_bump(1.0, 0.0, L);
    const double v = frac_laplacian(gl, Point(L * x), p, cfg, 1e-2);
    const double expected = std::pow(L, -2.0 * p.s) *
                            frac_laplacian(g, Point(x), p, cfg, 1e-2);
    CHECK(v == doctest::Approx(expected).epsilon(0.02));
  }
  CHECK(base != 0.0);
}

TEST_CASE("sign at strict interior extrema") {
  auto p = FracParams::make(0.5, 0.5);
  SpaceQuadratureConfig cfg;
  auto grid = SpaceGrid::make_1d(-5, 5, 101, DomainKind::interval, -5, 5);
  std::vector<double> vals(grid.node_count());
  // Dip to the global minimum at the center; constant exterior at that level
  // nowhere smaller off-grid.
  const double floor_v = -1.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double x = grid.node(i).x1();
    vals[i] = floor_v + (1.0 - std::exp(-x * x));
  }
  FunctionDescriptor ext_min = FunctionDescriptor::constant(0.0);
  GridField f{&grid, &vals, &ext_min};
  const std::size_t center = 50;
  CHECK(frac_laplacian(f, center, p, cfg) <= 0.0);

  // Mirror statement at a strict maximum.
  std::vector<double> neg(vals.size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -vals[i];
  FunctionDescriptor ext_max = FunctionDescriptor::constant(0.0);
  GridField fm{&grid, &neg, &ext_max};
  CHECK(frac_laplacian(fm, center, p, cfg) >= 0.0);
}

TEST_CASE("operator matrix: constants, sign structure, consistency") {
  auto p = FracParams::make(0.5, 0.5);
  SpaceQuadratureConfig cfg;
  auto grid = SpaceGrid::make_1d(0, 1, 21, DomainKind::interval, 0, 1);
  auto op = assemble_operator_matrix(grid, p, cfg);

  FunctionDescriptor one = FunctionDescriptor::constant(1.0);
  auto load1 = op.exterior_load(one);
  std::vector<double> ones(grid.node_count(), 1.0);
  for (std::size_t r = 0; r < op.interior_ids.size(); ++r)
    CHECK(std::abs(op.apply_row(r, ones, load1)) < 1e-10);

  for (Eigen::Index i = 0; i < op.interior.rows(); ++i) {
    CHECK(op.interior(i, i) > 0.0);
    for (Eigen::Index j = 0; j < op.interior.cols(); ++j)
      if (i != j) CHECK(op.interior(i, j) <= 0.0);
    double row_sum = op.interior.row(i).sum();
    CHECK(row_sum >= -1e-12);
    for (Eigen::Index j = 0; j < op.exterior_nodes.cols(); ++j)
      CHECK(op.exterior_nodes(i, j) <= 0.0);
  }

  // Toy-grid agreement between the assembled rows and pointwise evaluation.
  auto toy = SpaceGrid::make_1d(0, 1, 5, DomainKind::interval, 0, 1);
  auto top = assemble_operator_matrix(toy, p, cfg);
  std::vector<double> u(toy.node_count());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = toy.node(i).x1();
    u[i] = x * x * (1.0 - x);
  }
  FunctionDescriptor zero = FunctionDescriptor::constant(0.0);
  auto load0 = top.exterior_load(zero);
  GridField gf{&toy, &u, &zero};
  for (std::size_t r = 0; r < top.interior_ids.size(); ++r) {
    const double via_matrix = top.apply_row(r, u, load0);
    const double via_pointwise = frac_laplacian(gf, top.interior_ids[r], p, cfg);
    CHECK(via_matrix == doctest::Approx(via_pointwise).epsilon(1e-12));
  }

  CHECK_THROWS_AS(
      assemble_operator_matrix(
          SpaceGrid::make_1d(0, 1, 4, DomainKind::interval, 0, 1), p, cfg),
      std::invalid_argument);
}

TEST_CASE("folded assembly keeps the M-matrix structure") {
  auto p = FracParams::make(0.5, 0.5);
  SpaceQuadratureConfig cfg;
  auto grid = SpaceGrid::make_1d(0, 6, 61, DomainKind::slab, 5.0, 6.0);
  auto op = assemble_operator_matrix(grid, p, cfg, 6.0);
  for (Eigen::Index i = 0; i < op.interior.rows(); ++i) {
    CHECK(op.interior(i, i) > 0.0);
    for (Eigen::Index j = 0; j < op.interior.cols(); ++j)
      if (i != j) CHECK(op.interior(i, j) <= 1e-14);
  }
  CHECK_THROWS_AS(assemble_operator_matrix(grid, p, cfg, 3.0),
                  std::invalid_argument);
}

TEST_CASE("slab auxiliary function: positive operator-to-value ratio") {
  // The literature asserts a positive lower bound for (-lap)^s h / h on the
  // slab without pinning its constant; the empirical infimum is recorded and
  // must be positive. The growing (1+|x'|^2)^{beta/2} factor is trivial in
  // 1-D, so this exercises the bump part plus a power-growth declaration.
  auto p = FracParams::make(0.5, 0.5);
  SpaceQuadratureConfig cfg;
  cfg.tail_mode = SpaceTailMode::power_series;
  const double lambda = 2.0, l = 0.25, beta = 0.4;
  FunctionDescriptor h = FunctionDescriptor::slab_barrier(lambda, l, beta, p.s);
  double ratio_inf = std::numeric_limits<double>::infinity();
  for (double x = lambda - 2.0 * l + 0.05; x < lambda - 0.05; x += 0.05) {
    const double lap = frac_laplacian(h, Point(x), p, cfg, 5e-3);
    const double ratio = lap / (h(x) * std::pow(l, -2.0 * p.s));
    ratio_inf = std::min(ratio_inf, ratio);
  }
  CHECK(ratio_inf > 0.0);

  // Growth at or above 2s diverges and is rejected.
  FunctionDescriptor bad{Family::linear, {0.0, 1.0},
                         TailClass::power_growth(1.2)};
  CHECK_THROWS_AS(frac_laplacian(bad, Point(0.0), p, cfg, 1e-2),
                  std::domain_error);
}
