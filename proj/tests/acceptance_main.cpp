// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and probe sets are pinned here, not configurable.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <random>

#include "fracdual/frac_space/barriers.hpp"
#include "fracdual/frac_time/cutoff.hpp"
#include "fracdual/principles/principles.hpp"

using namespace fracdual;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void verdict_line(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name,
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

void criterion_1_eigenfunction() {
  Timer timer;
  double worst = 0.0;
  TimeQuadratureConfig cfg;
  cfg.tail_mode = TimeTailMode::adaptive_then_constant;
  for (double alpha : {0.25, 0.5, 0.75}) {
    const FracParams p = FracParams::make(alpha, 0.5);
    for (double rate : {0.5, 1.0, 2.0}) {
      const double dt = 1e-3;
      TimeTrace tr = sample_trace(FunctionDescriptor::exponential(1.0, rate),
                                  -19.0, dt, 20001);  // history depth 20
      for (int k = 1; k <= 10; ++k) {
        const double t = 0.1 * k;
        const double v = marchaud(tr, t, p, cfg);
        const double exact = std::pow(rate, alpha) * std::exp(rate * t);
        worst = std::max(worst, std::abs(v - exact) / exact);
      }
    }
  }
  const double sec = timer.seconds();
  verdict_line(1, "marchaud eigenfunction rel err < 1e-3",
               worst < 1e-3 && sec < 10.0,
               fmt("max rel err %.2e, %.1f s", worst, sec));
}

void criterion_2_counterexample() {
  Timer timer;
  auto res = counterexample_experiment(0.5, 100.0, 200);
  const double sec = timer.seconds();
  const bool pass = res.min_marchaud >= -1e-6 && res.min_u == -1.0 &&
                    std::abs(res.arg_min_u - 3.0 * M_PI / 2.0) < 1e-9 &&
                    res.report.conclusion.verdict == Verdict::inconclusive &&
                    sec < 5.0;
  verdict_line(2, "counterexample: derivative sign vs dipping u", pass,
               fmt("min dta_u %.3e, min u %.6f at t=%.6f, %.1f s",
                   res.min_marchaud, res.min_u, res.arg_min_u, sec));
}

void criterion_3_ball_constancy() {
  Timer timer;
  SpaceQuadratureConfig cfg;
  double worst_spread = 0.0, worst_scaling = 0.0;
  for (double s : {0.3, 0.5, 0.7}) {
    const FracParams p = FracParams::make(0.5, s);
    auto r = verify_ball_constancy(1.0, p, cfg);
    worst_spread = std::max(worst_spread, r.rel_spread);
    worst_scaling =
        std::max(worst_scaling, std::abs(r.scaling_ratio_double /
                                             std::pow(2.0, -2.0 * s) -
                                         1.0));
  }
  verdict_line(3, "ball-barrier constancy and r^{-2s} scaling",
               worst_spread < 0.02 && worst_scaling < 0.02,
               fmt("max spread %.2e, max scaling err %.2e, %.1f s",
                   worst_spread, worst_scaling, timer.seconds()));
}

void criterion_4_fourier_symbol() {
  Timer timer;
  const FracParams p = FracParams::make(0.5, 0.5);
  SpaceQuadratureConfig cfg;
  cfg.z_max = 200.0;
  auto grid = SpaceGrid::make_1d(-10, 10, 2001, DomainKind::interval, -10, 10);
  FunctionDescriptor ext = FunctionDescriptor::sine(1.0, 1.0, 0.0);
  std::vector<double> vals(grid.node_count());
  for (std::size_t i = 0; i < vals.size(); ++i)
    vals[i] = std::sin(grid.node(i).x1());
  GridField f{&grid, &vals, &ext};
  double worst = 0.0;
  for (double x : {0.3, 0.9, 1.6, -2.2, 4.8}) {
    const auto node = static_cast<std::size_t>(std::llround((x + 10) / grid.h));
    const double v = frac_laplacian(f, node, p, cfg);
    worst = std::max(worst, std::abs(v / std::sin(x) - 1.0));
  }
  verdict_line(4, "Fourier symbol on the unit sine within 1%", worst < 0.01,
               fmt("max rel err %.2e at 5 probes, %.1f s", worst,
                   timer.seconds()));
}

void criterion_5_scaling_identity() {
  Timer timer;
  const FracParams p = FracParams::make(0.5, 0.5);
  double worst = 0.0;
  const double lam_r = std::pow(0.5, 2.0 * p.s / p.alpha);  // r = 0.5
  for (double lam : {0.5, 2.0, lam_r}) {
    auto r = check_scaling_identity(p, lam);
    worst = std::max(worst, r.max_rel_err);
  }
  verdict_line(5, "rescaling identity rel err < 1e-4", worst < 1e-4,
               fmt("max rel err %.2e, %.1f s", worst, timer.seconds()));
}

void criterion_6_cutoff_bound() {
  Timer timer;
  bool all = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (double alpha : {0.25, 0.5, 0.75}) {
    auto r = check_cutoff_bound(FracParams::make(alpha, 0.5));
    all = all && r.satisfied && r.sup_abs < r.bound;
    worst_margin = std::min(worst_margin, r.bound - r.sup_abs);
  }
  verdict_line(6, "cutoff derivative bound, strict", all,
               fmt("worst margin %.3f, %.1f s", worst_margin, timer.seconds()));
}

void criterion_7_max_principle_randomized() {
  Timer timer;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst_plain = 0.0, worst_anti = 0.0;
  bool checker_ok = true;
  for (int inst = 0; inst < 100; ++inst) {
    const FracParams p =
        FracParams::make(0.15 + 0.7 * U(rng), 0.15 + 0.7 * U(rng));
    const int n = 20 + static_cast<int>(U(rng) * 180);  // <= 200 nodes
    IvpProblem pb;
    pb.grid = SpaceGrid::make_1d(0, 10, n, DomainKind::interval, 0, 10);
    pb.params = p;
    pb.prehistory = SpaceTimeFn::of_space(FunctionDescriptor::gaussian_bump(
        U(rng), 10.0 * U(rng), 0.3 + 1.5 * U(rng)));
    pb.exterior =
        SpaceTimeFn::of_space(FunctionDescriptor::constant(0.4 * U(rng)));
    pb.cfg.dt = 0.05 + 0.2 * U(rng);
    pb.cfg.n_steps = 12;
    auto r = run_ivp(pb);
    for (double mn : r.min_u) worst_plain = std::min(worst_plain, mn);
    if (inst % 10 == 0) {
      PrincipleTolerance tol;
      auto rep = check_max_principle(
          r.traj, r.traj.t_start + 0.5 * pb.cfg.dt,
          r.traj.time_of(r.traj.level_count() - 1), tol, p, pb.cfg);
      checker_ok = checker_ok && rep.conclusion.verdict != Verdict::violated;
    }
  }
  for (int inst = 0; inst < 100; ++inst) {
    const FracParams p =
        FracParams::make(0.15 + 0.7 * U(rng), 0.15 + 0.7 * U(rng));
    const double lambda = 6.0;
    const int n = 40 + static_cast<int>(U(rng) * 80);
    IvpProblem pb;
    pb.grid = SpaceGrid::make_1d(0, lambda, n, DomainKind::slab,
                                 lambda - 1.0 - 2.0 * U(rng), lambda);
    pb.params = p;
    pb.exterior = SpaceTimeFn::of_space(FunctionDescriptor::gaussian_bump(
        0.5 * U(rng), 2.0 + 2.0 * U(rng), 0.5 + U(rng)));
    pb.prehistory = SpaceTimeFn::zero();
    pb.cfg.dt = 0.05 + 0.2 * U(rng);
    pb.cfg.n_steps = 10;
    pb.fold_lambda = lambda;
    auto r = run_ivp(pb);
    for (double mn : r.min_u) worst_anti = std::min(worst_anti, mn);
    if (inst % 10 == 0) {
      PrincipleTolerance tol;
      auto rep = check_antisym_max_principle_folded(
          r.traj, r.traj.t_start + 0.5 * pb.cfg.dt,
          r.traj.time_of(r.traj.level_count() - 1), tol, p, pb.cfg);
      checker_ok = checker_ok && rep.conclusion.verdict != Verdict::violated;
    }
  }
  const double sec = timer.seconds();
  const bool pass = worst_plain >= -1e-10 && worst_anti >= -1e-10 &&
                    checker_ok && sec < 120.0;
  verdict_line(7, "discrete maximum principle, 100+100 randomized runs", pass,
               fmt("worst min %.2e plain / %.2e antisym, %.1f s", worst_plain,
                   worst_anti, sec));
}

void criterion_8_averaging() {
  Timer timer;
  const FracParams p = FracParams::make(0.5, 0.5);
  PrincipleTolerance tol;
  SolveConfig cfg;
  cfg.dt = 0.1;
  auto main_inst =
      averaging_effect_experiment(2.0, 4.0, 0.0, 0.5, 1.0, tol, p, cfg);
  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (double shift : {0.0, 1.0, 2.0, 4.0}) {
    auto r = averaging_effect_experiment(2.0 + shift, 4.0 + shift, 0.0, 0.5,
                                         1.0, tol, p, cfg);
    if (r.delta > prev + 1e-15) monotone = false;
    prev = r.delta;
  }
  auto anti =
      antisym_averaging_experiment(2.0, 4.0, 0.0, 0.5, 1.0, 6.0, tol, p, cfg);
  const bool pass = main_inst.delta > 0.0 &&
                    main_inst.report.conclusion.verdict == Verdict::holds &&
                    main_inst.u_at_probe >= main_inst.delta && monotone &&
                    anti.report.conclusion.verdict == Verdict::holds &&
                    anti.delta > 0.0;
  verdict_line(8, "averaging effects with certified delta", pass,
               fmt("delta %.4e, u(x0,t0) %.4e, antisym delta %.4e, %.1f s",
                   main_inst.delta, main_inst.u_at_probe, anti.delta,
                   timer.seconds()));
}

void criterion_9_moving_plane() {
  Timer timer;
  const FracParams p = FracParams::make(0.5, 0.5);
  IvpProblem pb;
  pb.grid = SpaceGrid::make_1d(0, 20, 200, DomainKind::half_space_truncation,
                               0, 20);
  pb.params = p;
  pb.reaction = ReactionSpec::logistic_like(1.0);
  // Truncated half space: zero left of the wall, far field frozen at the
  // reaction equilibrium beyond the truncation (nodes -1, 6, 13, 20; the
  // interior ramp is never consulted).
  pb.exterior = SpaceTimeFn::of_space(FunctionDescriptor::tabulated(
      -1.0, 7.0, {0.0, 0.0, 1.0, 1.0},
      TailClass::eventually_constant(1.0, 25.0)));
  pb.cfg.dt = 0.25;
  pb.cfg.n_steps = 8000;  // T = 2000, deep into the algebraic tail
  auto run = run_ivp(pb);

  // Lattice-exact planes approximating 0.5 .. 9.5 (h = 20/199).
  std::vector<double> lams;
  const double h = pb.grid.h;
  for (int m = 10; m <= 189; m += 10) lams.push_back(0.5 * m * h);
  PrincipleTolerance tol;
  auto scan = moving_plane_scan(run.traj, lams, tol);

  // Negative control: a planted dip must produce a finite critical plane
  // whose worst deficit reflects into the dip.
  HistoryField dip = run.traj;
  for (auto& lv : dip.levels)
    for (std::size_t i = 0; i < lv.size(); ++i) {
      const double x = dip.grid.node(i).x1();
      lv[i] -= 0.4 * std::exp(-2.0 * (x - 6.0) * (x - 6.0));
    }
  auto scan_dip = moving_plane_scan(dip, lams, tol);
  double bad_lambda = 0.0, bad_x = 0.0;
  for (const auto& row : scan_dip.rows)
    if (row.min_w < -tol.conclusion_tol) {
      bad_lambda = row.lambda;
      bad_x = row.argmin_x;
      break;
    }
  const bool dip_located = std::isfinite(scan_dip.lambda0) &&
                           std::abs(2.0 * bad_lambda - bad_x - 6.0) < 1.5;

  const double sec = timer.seconds();
  const bool pass = scan.steady && std::isinf(scan.lambda0) && scan.monotone &&
                    scan.min_forward_diff > 1e-8 && dip_located && sec < 300.0;
  verdict_line(9, "moving-plane monotonicity with negative control", pass,
               fmt("increment %.2e, min fwd diff %.2e, dip lambda0 %.3f, %.0f s",
                   scan.steadiness_increment, scan.min_forward_diff,
                   scan_dip.lambda0, sec));
}

void criterion_10_residual_refinement() {
  Timer timer;
  const FracParams p = FracParams::make(0.5, 0.5);
  auto run_case = [&](double dt, int nx) {
    IvpProblem pb;
    pb.grid = SpaceGrid::make_1d(0, 20, nx, DomainKind::half_space_truncation,
                                 0, 20);
    pb.params = p;
    FunctionDescriptor phi = FunctionDescriptor::gaussian_bump(1.0, 10.0, 2.0);
    pb.prehistory = {phi, FunctionDescriptor::exponential(1.0, 1.0)};
    pb.exterior = pb.prehistory;
    pb.cfg.dt = dt;
    pb.cfg.n_steps = static_cast<int>(std::llround(2.0 / dt));
    SpaceQuadratureConfig tight;
    std::vector<double> lphi(pb.grid.node_count());
    for (std::size_t i = 0; i < lphi.size(); ++i)
      lphi[i] = frac_laplacian(phi, pb.grid.node(i), p, tight, 1e-2);
    const SpaceGrid g = pb.grid;
    pb.forcing = [g, lphi, phi](const Point& x, double t) {
      const auto i = static_cast<std::size_t>(
          std::llround((x.x1() - g.x_min[0]) / g.h));
      return std::exp(t) * (phi(x.x1()) + lphi[i]);
    };
    auto r = run_ivp(pb);
    auto rf = residual(r.traj, ReactionSpec::zero(), p, pb.cfg, pb.forcing);
    return rf.max_abs;
  };
  const double coarse = run_case(0.1, 101);
  const double fine = run_case(0.05, 201);
  const double ratio = coarse / fine;
  verdict_line(10, "manufactured-solution residual refinement >= 1.5x",
               ratio >= 1.5,
               fmt("residual %.3e -> %.3e, ratio %.2f, %.1f s", coarse, fine,
                   ratio, timer.seconds()));
}

}  // namespace

int main() {
  criterion_1_eigenfunction();
  criterion_2_counterexample();
  criterion_3_ball_constancy();
  criterion_4_fourier_symbol();
  criterion_5_scaling_identity();
  criterion_6_cutoff_bound();
  criterion_7_max_principle_randomized();
  criterion_8_averaging();
  criterion_9_moving_plane();
  criterion_10_residual_refinement();
  std::printf("acceptance: %d/10 passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
