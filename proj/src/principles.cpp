#include "fracdual/principles/principles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>

#include "fracdual/frac_space/barriers.hpp"
#include "fracdual/frac_time/cutoff.hpp"

namespace fracdual {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

std::vector<std::size_t> spread_sample(std::size_t count, std::size_t max_n) {
  std::vector<std::size_t> out;
  if (count == 0) return out;
  const std::size_t step = std::max<std::size_t>(1, count / max_n);
  for (std::size_t i = 0; i < count; i += step) out.push_back(i);
  return out;
}

struct Window {
  std::size_t first_level;  // first level with t > t1
  std::size_t last_level;   // last level with t <= t2
};

Window window_levels(const HistoryField& traj, double t1, double t2) {
  if (t2 <= t1) throw std::invalid_argument("window: t2 must exceed t1");
  const double eps = 1e-12 * std::max(1.0, std::abs(t2));
  std::size_t first = traj.level_count(), last = 0;
  bool any = false;
  for (std::size_t l = 0; l < traj.level_count(); ++l) {
    const double t = traj.time_of(l);
    if (t > t1 + eps && t <= t2 + eps) {
      if (!any) first = l;
      last = l;
      any = true;
    }
  }
  if (!any)
    throw std::invalid_argument("window: trajectory does not cover (t1, t2]");
  return {first, last};
}

TimeTrace node_trace(const HistoryField& traj, std::size_t node,
                     std::size_t up_to_level) {
  TimeTrace tr;
  tr.t_start = traj.t_start;
  tr.dt = traj.dt;
  tr.values.resize(up_to_level + 1);
  for (std::size_t j = 0; j <= up_to_level; ++j)
    tr.values[j] = traj.levels[j][node];
  tr.prehistory = traj.prehistory.time;
  tr.prehistory_scale = traj.prehistory.space.at_point(traj.grid.node(node));
  return tr;
}

/// Minimum of the separable prehistory over nodes and a ladder of past
/// times, including the deep-tail limit.
double prehistory_min(const HistoryField& traj) {
  double mn = std::numeric_limits<double>::infinity();
  const double taus[] = {0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0, 1000.0};
  for (std::size_t i = 0; i < traj.grid.node_count(); ++i) {
    if (!traj.grid.is_interior(i)) continue;
    const Point p = traj.grid.node(i);
    for (double back : taus)
      mn = std::min(mn, traj.prehistory(p, traj.t_start - back));
    const double sp = traj.prehistory.space.at_point(p);
    if (traj.prehistory.time.tail.kind == TailKind::eventually_constant)
      mn = std::min(mn, sp * traj.prehistory.time.tail.value);
  }
  return mn;
}

/// Minimum of the exterior data over lattice data nodes, near-field off-grid
/// probes, and the declared far values, across the window levels.
double exterior_min(const HistoryField& traj, const Window& w) {
  double mn = std::numeric_limits<double>::infinity();
  const SpaceGrid& g = traj.grid;
  std::vector<Point> probes;
  for (std::size_t i = 0; i < g.node_count(); ++i)
    if (!g.is_interior(i)) probes.push_back(g.node(i));
  for (double off : {1.0, 2.0, 5.0, 25.0}) {
    probes.emplace_back(g.x_min[0] - off * g.h * 10.0);
    probes.emplace_back(g.x_max[0] + off * g.h * 10.0);
  }
  for (std::size_t l = w.first_level; l <= w.last_level; ++l) {
    const double t = traj.time_of(l);
    for (const Point& p : probes) mn = std::min(mn, traj.exterior(p, t));
  }
  return mn;
}

}  // namespace

ExperimentReport check_max_principle(const HistoryField& traj, double t1,
                                     double t2, const PrincipleTolerance& tol,
                                     const FracParams& params,
                                     const SolveConfig& cfg) {
  const Window w = window_levels(traj, t1, t2);
  ExperimentReport rep;
  rep.name = "max_principle_bounded";
  rep.hypothesis_tol = tol.hypothesis_tol;
  rep.conclusion_tol = tol.conclusion_tol;

  // Operator inequality on a subsample of interior nodes and window levels.
  std::vector<std::size_t> nodes;
  for (std::size_t i = 0; i < traj.grid.node_count(); ++i)
    if (traj.grid.is_interior(i)) nodes.push_back(i);
  const auto node_sel = spread_sample(nodes.size(), 12);
  const auto level_sel = spread_sample(w.last_level - w.first_level + 1, 6);
  double op_min = std::numeric_limits<double>::infinity();
  for (std::size_t ls : level_sel) {
    const std::size_t l = w.first_level + ls;
    if (l == 0) continue;
    const double t = traj.time_of(l);
    GridField gf{&traj.grid, &traj.levels[l], &traj.exterior.space,
                 traj.exterior.time.at_time(t)};
    for (std::size_t ns : node_sel) {
      const std::size_t i = nodes[ns];
      TimeTrace tr = node_trace(traj, i, l);
      const double v = marchaud(tr, t, params, cfg.time_quadrature) +
                       frac_laplacian(gf, i, params, cfg.space_quadrature);
      op_min = std::min(op_min, v);
    }
  }
  rep.add_hypothesis("operator inequality d_t^a u + (-lap)^s u >= 0 on the window",
                     op_min);
  rep.add_hypothesis("exterior data >= 0 over the window", exterior_min(traj, w));
  rep.add_hypothesis("past data >= 0 on the whole history", prehistory_min(traj));

  const double interior_min = traj.min_interior(w.first_level, w.last_level + 1);
  rep.conclude_nonnegative("min of u over the interior window", interior_min);
  return rep;
}

namespace {

struct AntisymChecks {
  double op_min = std::numeric_limits<double>::infinity();
  double data_min = std::numeric_limits<double>::infinity();
  double pre_min = std::numeric_limits<double>::infinity();
  double antisym_residual = 0.0;
  double w_min = std::numeric_limits<double>::infinity();
  double c_sup = -std::numeric_limits<double>::infinity();
};

}  // namespace

ExperimentReport check_antisym_max_principle(
    const HistoryField& u, double lambda, double t1, double t2,
    const PrincipleTolerance& tol, const FracParams& params,
    const SolveConfig& cfg, const ReactionSpec* reaction,
    std::optional<double> c0) {
  if (!u.grid.reflection_is_lattice_exact(lambda))
    throw std::invalid_argument(
        "check_antisym_max_principle: lambda is not lattice-exact");
  const Window w = window_levels(u, t1, t2);
  const HistoryField wf = antisymmetric_difference(u, lambda);
  const SpaceGrid& g = u.grid;

  AntisymChecks ck;
  // Interior-of-w nodes (strictly left of the plane, inside the PDE domain).
  std::vector<std::size_t> wnodes;
  for (std::size_t i = 0; i < wf.grid.node_count(); ++i)
    if (wf.grid.is_interior(i)) wnodes.push_back(i);

  // Antisymmetry residual at mirrored pairs (lattice-exact reflection).
  for (std::size_t l = w.first_level; l <= w.last_level; ++l) {
    for (std::size_t i : wnodes) {
      const long ir = g.reflected_node(i, lambda);
      if (ir < 0) continue;
      const double w_left = u.levels[l][static_cast<std::size_t>(ir)] -
                            u.levels[l][i];
      const double w_right = u.levels[l][i] -
                             u.levels[l][static_cast<std::size_t>(ir)];
      ck.antisym_residual =
          std::max(ck.antisym_residual, std::abs(w_left + w_right));
    }
  }

  // Conclusion data: min of w over the domain-left window.
  for (std::size_t l = w.first_level; l <= w.last_level; ++l)
    for (std::size_t i : wnodes)
      ck.w_min = std::min(ck.w_min, wf.levels[l][i]);

  // Data sign on the left region outside the domain.
  for (std::size_t l = w.first_level; l <= w.last_level; ++l)
    for (std::size_t i = 0; i < wf.grid.node_count(); ++i)
      if (!wf.grid.is_interior(i))
        ck.data_min = std::min(ck.data_min, wf.levels[l][i]);

  // Past sign of w at the sampled nodes (separable prehistory).
  const double taus[] = {0.0, 0.5, 2.0, 10.0, 100.0};
  for (std::size_t i : wnodes) {
    const Point p = wf.grid.node(i);
    const Point pr = reflect_point(p, lambda);
    for (double back : taus)
      ck.pre_min = std::min(ck.pre_min,
                            u.prehistory(pr, u.t_start - back) -
                                u.prehistory(p, u.t_start - back));
  }

  // Operator inequality on w where the reflected node stays interior.
  const auto node_sel = spread_sample(wnodes.size(), 10);
  const auto level_sel = spread_sample(w.last_level - w.first_level + 1, 4);
  for (std::size_t ls : level_sel) {
    const std::size_t l = w.first_level + ls;
    if (l == 0) continue;
    const double t = u.time_of(l);
    GridField gf{&g, &u.levels[l], &u.exterior.space,
                 u.exterior.time.at_time(t)};
    for (std::size_t ns : node_sel) {
      const std::size_t i = wnodes[ns];
      const long ir = g.reflected_node(i, lambda);
      if (ir < 0 || !g.is_interior(static_cast<std::size_t>(ir))) continue;
      const auto iru = static_cast<std::size_t>(ir);
      TimeTrace tr_x = node_trace(u, i, l);
      TimeTrace tr_r = node_trace(u, iru, l);
      const double dtw = marchaud(tr_r, t, params, cfg.time_quadrature) -
                         marchaud(tr_x, t, params, cfg.time_quadrature);
      const double lpw = frac_laplacian(gf, iru, params, cfg.space_quadrature) -
                         frac_laplacian(gf, i, params, cfg.space_quadrature);
      double rhs = 0.0;
      if (reaction)
        rhs = (*reaction)(u.levels[l][iru]) - (*reaction)(u.levels[l][i]);
      ck.op_min = std::min(ck.op_min, dtw + lpw - rhs);
      if (c0 && reaction) {
        const double wv = u.levels[l][iru] - u.levels[l][i];
        if (std::abs(wv) > tol.hypothesis_tol)
          ck.c_sup = std::max(
              ck.c_sup,
              ((*reaction)(u.levels[l][iru]) - (*reaction)(u.levels[l][i])) / wv);
      }
    }
  }

  ExperimentReport rep;
  rep.name = "antisym_max_principle";
  rep.hypothesis_tol = tol.hypothesis_tol;
  rep.conclusion_tol = tol.conclusion_tol;
  rep.add_hypothesis("operator inequality on w over the window", ck.op_min);
  rep.add_hypothesis("w >= 0 on the left region outside the domain", ck.data_min);
  rep.add_hypothesis("w >= 0 on the whole past", ck.pre_min);
  rep.add_hypothesis("exact antisymmetry of sampled w",
                     -(ck.antisym_residual - 1e-12));
  if (c0)
    rep.add_hypothesis("coefficient quotient bounded by c0",
                       *c0 - std::max(ck.c_sup, 0.0));
  rep.conclude_nonnegative("min of w over the left window", ck.w_min);
  return rep;
}

ExperimentReport check_antisym_max_principle_folded(
    const HistoryField& w, double t1, double t2, const PrincipleTolerance& tol,
    const FracParams& params, const SolveConfig& cfg,
    const std::optional<std::vector<double>>& c_field) {
  const Window win = window_levels(w, t1, t2);
  const SpaceGrid& g = w.grid;
  const double lambda = g.x_max[0];

  ExperimentReport rep;
  rep.name = "antisym_max_principle_folded";
  rep.hypothesis_tol = tol.hypothesis_tol;
  rep.conclusion_tol = tol.conclusion_tol;

  std::vector<std::size_t> nodes;
  for (std::size_t i = 0; i < g.node_count(); ++i)
    if (g.is_interior(i)) nodes.push_back(i);

  // Operator residual via standalone time evaluator + folded spatial rows.
  OperatorMatrix op =
      assemble_operator_matrix(g, params, cfg.space_quadrature, lambda);
  const Eigen::VectorXd load_space = op.exterior_load(w.exterior.space);
  Eigen::VectorXd ext_nodes(static_cast<Eigen::Index>(op.exterior_ids.size()));
  for (std::size_t c = 0; c < op.exterior_ids.size(); ++c)
    ext_nodes[static_cast<Eigen::Index>(c)] =
        w.exterior.space.at_point(g.node(op.exterior_ids[c]));

  std::vector<long> row_of(g.node_count(), -1);
  for (std::size_t r = 0; r < op.interior_ids.size(); ++r)
    row_of[op.interior_ids[r]] = static_cast<long>(r);

  double op_min = std::numeric_limits<double>::infinity();
  const auto node_sel = spread_sample(nodes.size(), 10);
  const auto level_sel = spread_sample(win.last_level - win.first_level + 1, 4);
  for (std::size_t ls : level_sel) {
    const std::size_t l = win.first_level + ls;
    if (l == 0) continue;
    const double t = w.time_of(l);
    const double ext_t = w.exterior.time.at_time(t);
    for (std::size_t ns : node_sel) {
      const std::size_t i = nodes[ns];
      const auto r = static_cast<std::size_t>(row_of[i]);
      TimeTrace tr = node_trace(w, i, l);
      double lap = load_space[static_cast<Eigen::Index>(r)] * ext_t;
      for (std::size_t c = 0; c < op.interior_ids.size(); ++c)
        lap += op.interior(static_cast<Eigen::Index>(r),
                           static_cast<Eigen::Index>(c)) *
               w.levels[l][op.interior_ids[c]];
      for (std::size_t c = 0; c < op.exterior_ids.size(); ++c)
        lap += op.exterior_nodes(static_cast<Eigen::Index>(r),
                                 static_cast<Eigen::Index>(c)) *
               w.levels[l][op.exterior_ids[c]];
      double rhs = 0.0;
      if (c_field) rhs = (*c_field)[r] * w.levels[l][i];
      op_min = std::min(op_min,
                        marchaud(tr, t, params, cfg.time_quadrature) + lap - rhs);
    }
  }
  rep.add_hypothesis("operator inequality on w (folded evaluation)", op_min);

  double data_min = std::numeric_limits<double>::infinity();
  for (std::size_t l = win.first_level; l <= win.last_level; ++l)
    for (std::size_t i = 0; i < g.node_count(); ++i)
      if (!g.is_interior(i)) data_min = std::min(data_min, w.levels[l][i]);
  rep.add_hypothesis("w >= 0 on the left region outside the domain", data_min);
  rep.add_hypothesis("w >= 0 on the whole past", prehistory_min(w));
  rep.add_hypothesis_flag("antisymmetry by folded construction", true);

  rep.conclude_nonnegative("min of w over the slab window",
                           w.min_interior(win.first_level, win.last_level + 1));
  return rep;
}

NarrowRegionResult narrow_region_experiment(double l, double lambda,
                                            const FunctionDescriptor& c_field,
                                            const PrincipleTolerance& tol,
                                            const FracParams& params,
                                            SolveConfig cfg, double dip_depth) {
  if (!(l > 0.0)) throw std::invalid_argument("narrow_region: l > 0");
  const double pad = 2.0;
  const double lo = lambda - 2.0 * l - pad;
  const double h = std::min(l / 4.0, 0.05);
  const int n = static_cast<int>(std::llround((lambda - lo) / h)) + 1;
  SpaceGrid grid = SpaceGrid::make_1d(lo, lambda, n, DomainKind::slab,
                                      lambda - 2.0 * l, lambda);

  // Nonnegative plateau on the data region, vanishing toward the plane.
  const double plateau = 0.5;
  std::vector<double> tab;
  const double tab0 = lo - 1.0, tab_dx = 0.25;
  for (double x = tab0; x <= lambda + tab_dx / 2; x += tab_dx) {
    double v;
    if (x < lo - 0.4) v = 0.0;
    else if (x < lo) v = plateau * (x - (lo - 0.4)) / 0.4;
    else if (x <= lambda - 2.0 * l) v = plateau;
    else {
      const double q = (lambda - x) / (2.0 * l);  // 1 at slab start, 0 at plane
      v = plateau * std::max(0.0, q);
    }
    tab.push_back(v);
  }
  FunctionDescriptor data = FunctionDescriptor::tabulated(
      tab0, tab_dx, tab, TailClass::eventually_constant(0.0, std::abs(tab0) + 1.0));

  IvpProblem pb;
  pb.grid = grid;
  pb.params = params;
  pb.reaction = ReactionSpec::zero();
  pb.exterior = SpaceTimeFn::of_space(data);
  pb.prehistory = SpaceTimeFn::of_space(FunctionDescriptor::gaussian_bump(
      -dip_depth, lambda - l, std::max(l / 2.0, 1e-3)));
  pb.cfg = cfg;
  pb.fold_lambda = lambda;
  std::vector<double> c_nodes;
  for (std::size_t i = 0; i < grid.node_count(); ++i)
    if (grid.is_interior(i)) c_nodes.push_back(c_field.at_point(grid.node(i)));
  pb.c_field = c_nodes;

  NarrowRegionResult res;
  res.slab_width = 2.0 * l;
  double c_sup = -std::numeric_limits<double>::infinity();
  for (double c : c_nodes) c_sup = std::max(c_sup, c);

  HistoryField traj;
  bool blew_up = false;
  {
    HistoryField st(grid, 0.0, cfg.dt, pb.prehistory, pb.exterior);
    st.seed_initial_level();
    Solver solver(std::move(st), pb.reaction, params, cfg, nullptr, lambda,
                  pb.c_field);
    for (int k = 0; k < cfg.n_steps; ++k) {
      solver.step();
      const double mx = std::max(std::abs(solver.level_min().back()),
                                 std::abs(solver.level_max().back()));
      if (!std::isfinite(mx) || mx > 1e6) {
        blew_up = true;
        break;
      }
    }
    traj = solver.take_state();
  }

  const std::size_t n_lvl = traj.level_count();
  const std::size_t late_first =
      blew_up ? n_lvl - 1 : n_lvl - std::max<std::size_t>(1, n_lvl / 10);
  res.min_w_late = traj.min_interior(late_first, n_lvl);

  std::vector<std::pair<Point, double>> samples;
  for (std::size_t i = 0; i < grid.node_count(); ++i)
    samples.emplace_back(grid.node(i), traj.levels[n_lvl - 1][i]);
  res.growth_c_fit = growth_check(samples, 0.9 * 2.0 * params.s).c_fit;

  ExperimentReport& rep = res.report;
  rep.name = "narrow_region";
  rep.hypothesis_tol = tol.hypothesis_tol;
  rep.conclusion_tol = tol.conclusion_tol;
  rep.add_hypothesis_flag("coefficient c bounded above", std::isfinite(c_sup));
  rep.add_hypothesis("data >= 0 outside the slab (descriptor minimum)", 0.0);
  rep.add_hypothesis_flag("growth condition fit is finite",
                          std::isfinite(res.growth_c_fit));
  if (blew_up) {
    rep.conclusion.description = "late-time min of w over the slab";
    rep.conclusion.extremal_value = res.min_w_late;
    rep.conclusion.verdict = Verdict::violated;
  } else {
    rep.conclude_nonnegative("late-time min of w over the slab", res.min_w_late);
  }
  return res;
}

NarrowRegionSweep narrow_region_sweep(const std::vector<double>& l_values,
                                      double lambda,
                                      const FunctionDescriptor& c_field,
                                      const PrincipleTolerance& tol,
                                      const FracParams& params,
                                      const SolveConfig& cfg) {
  NarrowRegionSweep sweep;
  for (double l : l_values)
    sweep.results.push_back(
        narrow_region_experiment(l, lambda, c_field, tol, params, cfg));
  // Largest tested l such that every tested l' <= l holds.
  std::vector<std::pair<double, bool>> outcomes;
  for (std::size_t i = 0; i < l_values.size(); ++i)
    outcomes.emplace_back(l_values[i], sweep.results[i].report.conclusion.verdict ==
                                           Verdict::holds);
  std::sort(outcomes.begin(), outcomes.end());
  double l_star = 0.0;
  for (const auto& [l, ok] : outcomes) {
    if (ok) l_star = l;
    else break;
  }
  sweep.l_star = l_star;
  return sweep;
}

namespace {

double interval_kernel_integral(double x, double d1, double d2, double s) {
  auto f = [&](double y) { return std::pow(std::abs(x - y), -1.0 - 2.0 * s); };
  double err = 0.0;
  return GK::integrate(f, d1, d2, 10, 1e-12, &err);
}

struct BarrierConstant {
  double ball_mean = 0.0;  // measured operator value of the unit-C bump
  double eta_sup = 0.0;    // measured sup |d_t^alpha eta|
};

BarrierConstant measure_barrier_constant(double r, const FracParams& params,
                                         const SpaceQuadratureConfig& scfg) {
  BarrierConstant b;
  b.ball_mean = verify_ball_constancy(r, params, scfg).mean;
  b.eta_sup = check_cutoff_bound(params).sup_abs;
  return b;
}

}  // namespace

AveragingResult averaging_effect_experiment(double d1, double d2, double x0,
                                            double r, double C0,
                                            const PrincipleTolerance& tol,
                                            const FracParams& params,
                                            SolveConfig cfg) {
  if (!(d2 > d1)) throw std::invalid_argument("averaging: d2 > d1");
  const bool disjoint = (x0 + r <= d1) || (x0 - r >= d2);
  if (!disjoint)
    throw std::invalid_argument("averaging: ball intersects the closed region D");

  AveragingResult res;
  ExperimentReport& rep = res.report;
  rep.name = "averaging_effect";
  rep.hypothesis_tol = tol.hypothesis_tol;
  rep.conclusion_tol = tol.conclusion_tol;
  rep.add_hypothesis_flag("B_r(x0) disjoint from closure(D)", true);

  // Kernel integral measured over ball probes (infimum drives the bound).
  double kernel_inf = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 8; ++k) {
    const double x = x0 - r + 2.0 * r * k / 8.0;
    kernel_inf =
        std::min(kernel_inf, interval_kernel_integral(x, d1, d2, params.s));
  }
  res.c2 = params.c_ns * C0 * kernel_inf;
  res.eps = 0.5 * res.c2;

  const BarrierConstant bc =
      measure_barrier_constant(r, params, cfg.space_quadrature);
  const double C_total = bc.ball_mean * std::pow(r, 2.0 * params.s) +
                         std::pow(2.0, params.alpha) * bc.eta_sup;
  res.delta = res.c2 * std::pow(r, 2.0 * params.s) / (2.0 * C_total);

  // Zero-reaction run: plateau C0 on D for all times, ball solved.
  const double lo = std::min(x0 - r, d1) - 1.5;
  const double hi = std::max(x0 + r, d2) + 1.5;
  const double h = r / 20.0;
  const int n = static_cast<int>(std::llround((hi - lo) / h)) + 1;
  SpaceGrid grid = SpaceGrid::make_1d(lo, hi, n, DomainKind::ball, x0, r);

  std::vector<double> tab;
  const double tab0 = lo - 1.0, tab_dx = 0.05;
  for (double x = tab0; x <= hi + 1.0 + tab_dx / 2; x += tab_dx) {
    double v = 0.0;
    if (x >= d1 && x <= d2) v = C0;
    else if (x > d1 - 0.1 && x < d1) v = C0 * (x - (d1 - 0.1)) / 0.1;
    else if (x > d2 && x < d2 + 0.1) v = C0 * ((d2 + 0.1) - x) / 0.1;
    tab.push_back(v);
  }
  FunctionDescriptor data = FunctionDescriptor::tabulated(
      tab0, tab_dx, tab,
      TailClass::eventually_constant(0.0, std::abs(tab0) + std::abs(hi) + 2.0));

  const double window = std::pow(r, 2.0 * params.s / params.alpha);
  const double t0 = 20.0;
  cfg.n_steps = static_cast<int>(std::ceil((t0 + window) / cfg.dt));

  IvpProblem pb;
  pb.grid = grid;
  pb.params = params;
  pb.reaction = ReactionSpec::zero();
  pb.exterior = SpaceTimeFn::of_space(data);
  pb.prehistory = SpaceTimeFn::zero();
  pb.cfg = cfg;
  IvpResult run = run_ivp(pb);

  rep.add_hypothesis("u >= C0 on D through the window (data construction)", 0.0);
  rep.add_hypothesis("u >= 0 elsewhere and on the past", 0.0);
  // Operator residual is the f == 0 scheme consistency; must clear -eps.
  ResidualField rf = residual(run.traj, pb.reaction, params, cfg, nullptr,
                              std::max<std::size_t>(1, run.traj.level_count() / 4));
  rep.add_hypothesis("operator >= -eps in the ball cylinder",
                     res.eps - rf.max_abs);

  // Conclusion: u >= delta*phi*eta on the cylinder and u(x0, t0) >= delta.
  const Point px0(x0);
  FunctionDescriptor eta = FunctionDescriptor::cutoff(t0, window / 2.0);
  double min_gap = std::numeric_limits<double>::infinity();
  const Window wlv = window_levels(run.traj, t0 - window, t0 + window);
  for (std::size_t l = wlv.first_level; l <= wlv.last_level; ++l) {
    const double t = run.traj.time_of(l);
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
      if (!grid.is_interior(i)) continue;
      const double barrier =
          res.delta * barrier_phi(grid.node(i), px0, r, params.s) * eta(t);
      min_gap = std::min(min_gap, run.traj.levels[l][i] - barrier);
    }
  }
  res.min_above_barrier = min_gap;
  const auto l_t0 = static_cast<std::size_t>(std::llround(t0 / cfg.dt));
  res.u_at_probe = run.traj.eval_space(x0, l_t0, t0);
  const double extremal = std::min(min_gap, res.u_at_probe - res.delta);
  rep.conclude_nonnegative(
      "min(u - delta*phi*eta over cylinder, u(x0,t0) - delta)", extremal);
  return res;
}

AveragingResult antisym_averaging_experiment(double d1, double d2, double x0,
                                             double r, double C0, double lambda,
                                             const PrincipleTolerance& tol,
                                             const FracParams& params,
                                             SolveConfig cfg) {
  if (!(d2 > d1)) throw std::invalid_argument("antisym averaging: d2 > d1");
  if (!(x0 + r < lambda))
    throw std::invalid_argument("antisym averaging: ball must lie left of the plane");
  if (!(r <= 0.5 * (lambda - x0)))
    throw std::invalid_argument("antisym averaging: r <= dist(x0, plane)/2 required");
  const bool disjoint = (x0 + r <= d1) || (x0 - r >= d2);
  if (!disjoint)
    throw std::invalid_argument("antisym averaging: ball intersects closure(D)");
  if (!(d2 < lambda))
    throw std::invalid_argument("antisym averaging: D must lie left of the plane");

  AveragingResult res;
  ExperimentReport& rep = res.report;
  rep.name = "antisym_averaging_effect";
  rep.hypothesis_tol = tol.hypothesis_tol;
  rep.conclusion_tol = tol.conclusion_tol;
  rep.add_hypothesis_flag("geometry: ball in half-plane, disjoint from D, r bound",
                          true);

  // Kernel-difference integral: inf over ball probes; the integrand is
  // pointwise nonnegative left of the plane.
  double kernel_inf = std::numeric_limits<double>::infinity();
  double integrand_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 8; ++k) {
    const double x = x0 - r + 2.0 * r * k / 8.0;
    auto f = [&](double y) {
      const double direct = std::pow(std::abs(x - y), -1.0 - 2.0 * params.s);
      const double mirror =
          std::pow(std::abs(x - (2.0 * lambda - y)), -1.0 - 2.0 * params.s);
      return direct - mirror;
    };
    for (double y = d1; y <= d2; y += (d2 - d1) / 16.0)
      integrand_min = std::min(integrand_min, f(y));
    double err = 0.0;
    kernel_inf = std::min(kernel_inf, GK::integrate(f, d1, d2, 10, 1e-12, &err));
  }
  rep.add_hypothesis("kernel difference nonnegative in the half-plane",
                     integrand_min);
  res.c2 = params.c_ns * C0 * kernel_inf;
  res.eps = 0.5 * res.c2;

  // C gains the mirrored-ball kernel mass of the antisymmetric bump pair.
  const BarrierConstant bc =
      measure_barrier_constant(r, params, cfg.space_quadrature);
  double mirror_mass = 0.0;
  {
    const double xm = 2.0 * lambda - x0;  // mirrored bump center
    for (int k = 0; k <= 8; ++k) {
      const double x = x0 - r + 2.0 * r * k / 8.0;
      auto f = [&](double y) {
        return std::pow(std::abs(x - y), -1.0 - 2.0 * params.s);
      };
      double err = 0.0;
      mirror_mass = std::max(
          mirror_mass, GK::integrate(f, xm - r, xm + r, 10, 1e-12, &err));
    }
  }
  const double C_total = bc.ball_mean * std::pow(r, 2.0 * params.s) +
                         std::pow(2.0, params.alpha) * bc.eta_sup +
                         params.c_ns * mirror_mass * std::pow(r, 2.0 * params.s);
  res.delta = res.c2 * std::pow(r, 2.0 * params.s) / (2.0 * C_total);

  // Folded antisymmetric run on [lo, lambda], ball solved, plateau data on D.
  const double lo = std::min(x0 - r, d1) - 1.5;
  const double h = r / 20.0;
  const int n = static_cast<int>(std::llround((lambda - lo) / h)) + 1;
  SpaceGrid grid = SpaceGrid::make_1d(lo, lambda, n, DomainKind::ball, x0, r);

  std::vector<double> tab;
  const double tab0 = lo - 1.0, tab_dx = 0.05;
  for (double x = tab0; x <= lambda + tab_dx / 2; x += tab_dx) {
    double v = 0.0;
    if (x >= d1 && x <= std::min(d2, lambda - 1e-9)) v = C0;
    else if (x > d1 - 0.1 && x < d1) v = C0 * (x - (d1 - 0.1)) / 0.1;
    else if (x > d2 && x < d2 + 0.1) v = C0 * ((d2 + 0.1) - x) / 0.1;
    tab.push_back(v);
  }
  FunctionDescriptor data = FunctionDescriptor::tabulated(
      tab0, tab_dx, tab,
      TailClass::eventually_constant(0.0, std::abs(tab0) + std::abs(lambda) + 2.0));

  const double window = std::pow(r, 2.0 * params.s / params.alpha);
  const double t0 = 20.0;
  cfg.n_steps = static_cast<int>(std::ceil((t0 + window) / cfg.dt));

  IvpProblem pb;
  pb.grid = grid;
  pb.params = params;
  pb.reaction = ReactionSpec::zero();
  pb.exterior = SpaceTimeFn::of_space(data);
  pb.prehistory = SpaceTimeFn::zero();
  pb.cfg = cfg;
  pb.fold_lambda = lambda;
  IvpResult run = run_ivp(pb);

  rep.add_hypothesis("w >= C0 on D through the window (data construction)", 0.0);
  rep.add_hypothesis("w >= 0 elsewhere left of the plane and on the past", 0.0);

  // Antisymmetric bump pair at the plane: exact zero.
  const Point px0(x0);
  auto Phi = [&](const Point& x) {
    return barrier_phi(x, px0, r, params.s) -
           barrier_phi(Point(2.0 * lambda - x.x1()), px0, r, params.s);
  };
  rep.add_hypothesis("Phi vanishes on the plane", -std::abs(Phi(Point(lambda))));

  FunctionDescriptor eta = FunctionDescriptor::cutoff(t0, window / 2.0);
  double min_gap = std::numeric_limits<double>::infinity();
  const Window wlv = window_levels(run.traj, t0 - window, t0 + window);
  for (std::size_t l = wlv.first_level; l <= wlv.last_level; ++l) {
    const double t = run.traj.time_of(l);
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
      if (!grid.is_interior(i)) continue;
      const double barrier = res.delta * Phi(grid.node(i)) * eta(t);
      min_gap = std::min(min_gap, run.traj.levels[l][i] - barrier);
    }
  }
  res.min_above_barrier = min_gap;
  const auto l_t0 = static_cast<std::size_t>(std::llround(t0 / cfg.dt));
  res.u_at_probe = run.traj.eval_space(x0, l_t0, t0);
  const double extremal = std::min(min_gap, res.u_at_probe - res.delta);
  rep.conclude_nonnegative(
      "min(w - delta*Phi*eta over cylinder, w(x0,t0) - delta)", extremal);
  return res;
}

namespace {

double min_w_at_plane(const HistoryField& traj, double lambda,
                      std::size_t l_first, std::size_t l_last, double* argmin_x,
                      double* argmin_t) {
  const SpaceGrid& g = traj.grid;
  double mn = std::numeric_limits<double>::infinity();
  const bool exact = g.reflection_is_lattice_exact(lambda);
  for (std::size_t l = l_first; l <= l_last; ++l) {
    const double t = traj.time_of(l);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      const Point p = g.node(i);
      if (p.x1() >= lambda) break;
      if (!g.is_interior(i)) continue;  // scan over the PDE domain part
      double u_ref;
      if (exact) {
        const long ir = g.reflected_node(i, lambda);
        u_ref = ir >= 0 ? traj.levels[l][static_cast<std::size_t>(ir)]
                        : traj.exterior(Point(2.0 * lambda - p.x1()), t);
      } else {
        u_ref = traj.eval_space(2.0 * lambda - p.x1(), l, t);
      }
      const double w = u_ref - traj.levels[l][i];
      if (w < mn) {
        mn = w;
        if (argmin_x) *argmin_x = p.x1();
        if (argmin_t) *argmin_t = t;
      }
    }
  }
  return mn;
}

}  // namespace

PlaneScanResult moving_plane_scan(const HistoryField& traj,
                                  const std::vector<double>& lambda_grid,
                                  const PrincipleTolerance& tol,
                                  double steadiness_threshold) {
  if (lambda_grid.empty())
    throw std::invalid_argument("moving_plane_scan: empty lambda grid");
  const SpaceGrid& g = traj.grid;
  for (double lam : lambda_grid)
    if (!g.reflection_is_lattice_exact(lam))
      throw std::invalid_argument("moving_plane_scan: lambda grid not lattice-exact");

  PlaneScanResult res;
  const std::size_t n_lvl = traj.level_count();
  const std::size_t late_first = n_lvl - std::max<std::size_t>(1, n_lvl / 10);

  double inc = 0.0;
  for (std::size_t l = std::max<std::size_t>(late_first, 1); l < n_lvl; ++l)
    for (std::size_t i = 0; i < g.node_count(); ++i)
      if (g.is_interior(i))
        inc = std::max(inc, std::abs(traj.levels[l][i] - traj.levels[l - 1][i]));
  res.steadiness_increment = inc;
  res.steady = inc < steadiness_threshold;

  std::vector<double> sorted = lambda_grid;
  std::sort(sorted.begin(), sorted.end());
  double prev_ok = 0.0;
  bool hit = false;
  for (double lam : sorted) {
    PlaneScanRow row;
    row.lambda = lam;
    row.min_w = min_w_at_plane(traj, lam, late_first, n_lvl - 1, &row.argmin_x,
                               &row.argmin_t);
    res.rows.push_back(row);
    if (!hit && row.min_w < -tol.conclusion_tol) {
      hit = true;
      // Bisection between the last passing plane and this one, to 3 digits.
      double lo = prev_ok, hi = lam;
      for (int it = 0; it < 40 && hi - lo > 5e-4; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double mv =
            min_w_at_plane(traj, mid, late_first, n_lvl - 1, nullptr, nullptr);
        if (mv < -tol.conclusion_tol) hi = mid;
        else lo = mid;
      }
      res.lambda0 = hi;
    }
    if (!hit) prev_ok = lam;
  }

  // Pointwise forward differences on the near half of the domain, late window.
  const double x_half = 0.5 * (g.x_min[0] + g.x_max[0]);
  double min_fd = std::numeric_limits<double>::infinity();
  for (std::size_t l = late_first; l < n_lvl; ++l) {
    for (std::size_t i = 0; i + 1 < g.node_count(); ++i) {
      const Point p = g.node(i);
      if (p.x1() >= x_half) break;
      if (!g.is_interior(i) || !g.is_interior(i + 1)) continue;
      min_fd = std::min(min_fd, traj.levels[l][i + 1] - traj.levels[l][i]);
    }
  }
  res.min_forward_diff = min_fd;
  res.monotone = !hit && std::isinf(res.lambda0) && min_fd > tol.conclusion_tol;
  return res;
}

CounterexampleResult counterexample_experiment(double alpha, double R,
                                               int n_probe,
                                               const PrincipleTolerance& tol) {
  const FracParams params = FracParams::make(alpha, 0.5);
  const int sub = 20;
  const double dt = 2.0 * M_PI / (static_cast<double>(n_probe) * sub);
  FunctionDescriptor u = counterexample_trace(R);
  TimeTrace tr = sample_trace(u, 0.0, dt, n_probe * sub + 1);

  CounterexampleResult res;
  res.min_marchaud = std::numeric_limits<double>::infinity();
  res.min_u = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= n_probe; ++k) {
    const double t = static_cast<double>(k * sub) * dt;
    const double v = marchaud(tr, t, params);
    res.profile.emplace_back(t, v);
    if (v < res.min_marchaud) {
      res.min_marchaud = v;
      res.arg_min_marchaud = t;
    }
    const double ut = u(t);
    if (ut < res.min_u) {
      res.min_u = ut;
      res.arg_min_u = t;
    }
  }

  ExperimentReport& rep = res.report;
  rep.name = "counterexample_sign_hypothesis";
  rep.hypothesis_tol = tol.hypothesis_tol;
  rep.conclusion_tol = tol.conclusion_tol;
  rep.add_hypothesis("one-sided derivative >= 0 on (0, 2pi]", res.min_marchaud);
  rep.add_hypothesis("initial value u(0) = 0", -std::abs(u(0.0)));
  // The full-past sign hypothesis fails by construction: u < 0 for t < 0.
  rep.add_hypothesis("past data >= 0 on the whole history", u(-R / 2.0));
  rep.conclude_nonnegative("min of u over (0, 2pi]", res.min_u);
  return res;
}

}  // namespace fracdual
