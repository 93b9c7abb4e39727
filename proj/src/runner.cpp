#include "fracdual/cli/runner.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fracdual/frac_time/cutoff.hpp"
#include "fracdual/principles/principles.hpp"

namespace fracdual {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FRACDUAL_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& job) {
  const unsigned workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
        job(i);
    });
  for (auto& t : pool) t.join();
}

namespace {

json report_to_json(const ExperimentReport& rep) {
  json hyps = json::array();
  for (const auto& h : rep.hypotheses)
    hyps.push_back({{"description", h.description},
                    {"residual", h.residual},
                    {"satisfied", h.satisfied}});
  return json{{"name", rep.name},
              {"hypotheses", hyps},
              {"conclusion",
               {{"description", rep.conclusion.description},
                {"extremal_value", rep.conclusion.extremal_value},
                {"verdict", verdict_name(rep.conclusion.verdict)}}},
              {"artifacts", rep.artifacts},
              {"hypothesis_tol", rep.hypothesis_tol},
              {"conclusion_tol", rep.conclusion_tol}};
}

/// Funnel for all file writes of one run: collects the manifest, and in
/// check mode compares fresh numeric payloads against stored files instead
/// of overwriting.
class OutputWriter {
 public:
  OutputWriter(const RunConfig& cfg) : cfg_(cfg), dir_(cfg.output_dir) {
    fs::create_directories(dir_);
  }

  void write_text(const std::string& name, const std::string& payload) {
    const fs::path p = dir_ / name;
    if (cfg_.check_mode && fs::exists(p)) {
      std::ifstream in(p);
      std::string stored((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
      if (!payloads_match(stored, payload)) {
        mismatches_.push_back(name);
        return;
      }
    } else {
      std::ofstream out(p);
      out << payload;
    }
    files_.push_back(name);
  }

  void write_csv(const std::string& name,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    for (std::size_t c = 0; c < header.size(); ++c)
      os << (c ? "," : "") << header[c];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c)
        os << (c ? "," : "") << format_double(row[c]);
      os << "\n";
    }
    write_text(name, os.str());
  }

  /// Two-column plot series (generic t/value or x/value).
  void write_plot(const std::string& name, const std::string& xlabel,
                  const std::string& ylabel,
                  const std::vector<std::pair<double, double>>& rows) {
    std::vector<std::vector<double>> data;
    data.reserve(rows.size());
    for (const auto& [a, b] : rows) data.push_back({a, b});
    write_csv(name, {xlabel, ylabel}, data);
  }

  void write_report(const std::string& name, const ExperimentReport& rep) {
    write_text(name, report_to_json(rep).dump(2) + "\n");
  }

  void finalize() {
    std::ostringstream os;
    for (const auto& f : files_) os << f << "\n";
    std::ofstream out(dir_ / "MANIFEST");
    out << os.str();
  }

  const std::vector<std::string>& files() const { return files_; }
  const std::vector<std::string>& mismatches() const { return mismatches_; }

 private:
  static bool payloads_match(const std::string& a, const std::string& b) {
    // Numeric-aware comparison: token streams must agree within 1e-9 rel.
    std::istringstream sa(a), sb(b);
    std::string la, lb;
    while (true) {
      const bool ga = static_cast<bool>(std::getline(sa, la));
      const bool gb = static_cast<bool>(std::getline(sb, lb));
      if (ga != gb) return false;
      if (!ga) return true;
      if (la == lb) continue;
      std::replace(la.begin(), la.end(), ',', ' ');
      std::replace(lb.begin(), lb.end(), ',', ' ');
      std::istringstream ta(la), tb(lb);
      std::string xa, xb;
      while (true) {
        const bool ha = static_cast<bool>(ta >> xa);
        const bool hb = static_cast<bool>(tb >> xb);
        if (ha != hb) return false;
        if (!ha) break;
        if (xa == xb) continue;
        try {
          const double va = std::stod(xa), vb = std::stod(xb);
          if (std::abs(va - vb) > 1e-9 * std::max({1.0, std::abs(va), std::abs(vb)}))
            return false;
        } catch (...) {
          return false;
        }
      }
    }
  }

  const RunConfig& cfg_;
  fs::path dir_;
  std::vector<std::string> files_;
  std::vector<std::string> mismatches_;
};

void write_trajectory(OutputWriter& out, const std::string& name,
                      const HistoryField& traj) {
  std::ostringstream os;
  os << "level,t,node,x,u\n";
  for (std::size_t l = 0; l < traj.level_count(); ++l) {
    const double t = traj.time_of(l);
    for (std::size_t i = 0; i < traj.grid.node_count(); ++i) {
      os << l << "," << format_double(t) << "," << i << ","
         << format_double(traj.grid.node(i).x1()) << ","
         << format_double(traj.levels[l][i]) << "\n";
    }
  }
  out.write_text(name, os.str());
}

json config_echo(const RunConfig& cfg) {
  return json{{"command", command_name(cfg.command)},
              {"seed", cfg.seed},
              {"alpha", cfg.params.alpha},
              {"s", cfg.params.s},
              {"dt", cfg.solve.dt},
              {"n_steps", cfg.solve.n_steps},
              {"grid_n", cfg.grid.n[0]},
              {"grid_x_min", cfg.grid.x_min[0]},
              {"grid_x_max", cfg.grid.x_max[0]},
              {"reaction", ReactionSpec::family_name(cfg.reaction.family)}};
}

SpaceTimeFn default_exterior(const RunConfig& cfg) {
  if (cfg.exterior) return *cfg.exterior;
  return SpaceTimeFn::zero();
}

void run_simulate(const RunConfig& cfg, OutputWriter& out,
                  std::vector<ExperimentReport>& reports, std::ostream& log) {
  IvpProblem pb;
  pb.grid = cfg.grid;
  pb.params = cfg.params;
  pb.reaction = cfg.reaction;
  pb.prehistory = cfg.prehistory;
  pb.exterior = default_exterior(cfg);
  pb.cfg = cfg.solve;
  IvpResult res = run_ivp(pb);

  write_trajectory(out, "trajectory.csv", res.traj);
  std::vector<std::vector<double>> diag;
  for (std::size_t l = 0; l < res.min_u.size(); ++l)
    diag.push_back({static_cast<double>(l), res.traj.time_of(l), res.min_u[l],
                    res.max_u[l]});
  out.write_csv("diagnostics.csv", {"level", "t", "min_u", "max_u"}, diag);

  ExperimentReport rep =
      check_max_principle(res.traj, res.traj.t_start,
                          res.traj.time_of(res.traj.level_count() - 1),
                          cfg.tolerance, cfg.params, cfg.solve);
  rep.name = "simulate_max_principle";
  rep.artifacts = {"trajectory.csv", "diagnostics.csv"};
  out.write_report("simulate_report.json", rep);
  reports.push_back(rep);

  json meta = config_echo(cfg);
  meta["a0"] = res.a0;
  meta["final_min"] = res.min_u.back();
  meta["final_max"] = res.max_u.back();
  out.write_text("metadata.json", meta.dump(2) + "\n");
  log << "simulate: " << res.traj.level_count() << " levels, final min "
      << format_double(res.min_u.back()) << ", max "
      << format_double(res.max_u.back()) << "\n";
}

void run_counterexample(const RunConfig& cfg, OutputWriter& out,
                        std::vector<ExperimentReport>& reports,
                        std::ostream& log) {
  CounterexampleResult res = counterexample_experiment(
      cfg.params.alpha, cfg.counterexample.R, cfg.counterexample.n_probe,
      cfg.tolerance);
  out.write_plot("marchaud_profile.csv", "t", "dta_u", res.profile);
  std::vector<std::pair<double, double>> uprof;
  FunctionDescriptor u = counterexample_trace(cfg.counterexample.R);
  for (const auto& [t, v] : res.profile) uprof.emplace_back(t, u(t));
  out.write_plot("u_profile.csv", "t", "u", uprof);
  // Depth sweep: smallest tested past depth R for which the derivative-sign
  // inequality holds on the probe grid.
  std::vector<std::vector<double>> sweep;
  double r_smallest = std::numeric_limits<double>::infinity();
  for (double R : {10.0, 100.0, 1000.0}) {
    auto rr = counterexample_experiment(cfg.params.alpha, R,
                                        std::min(cfg.counterexample.n_probe, 60),
                                        cfg.tolerance);
    const bool ok = rr.min_marchaud >= -cfg.tolerance.hypothesis_tol;
    sweep.push_back({R, rr.min_marchaud, ok ? 1.0 : 0.0});
    if (ok) r_smallest = std::min(r_smallest, R);
  }
  out.write_csv("r_sweep.csv", {"R", "min_dta_u", "holds"}, sweep);
  res.report.artifacts = {"marchaud_profile.csv", "u_profile.csv", "r_sweep.csv"};
  out.write_report("counterexample_report.json", res.report);
  reports.push_back(res.report);
  log << "counterexample: min d_t^a u = " << format_double(res.min_marchaud)
      << " at t = " << format_double(res.arg_min_marchaud)
      << "; min u = " << format_double(res.min_u) << " at t = "
      << format_double(res.arg_min_u)
      << "; smallest passing depth R = " << format_double(r_smallest) << "\n";
}

void run_averaging(const RunConfig& cfg, OutputWriter& out,
                   std::vector<ExperimentReport>& reports, std::ostream& log) {
  const auto& av = cfg.averaging;
  std::vector<std::vector<double>> sweep_rows;
  if (av.antisym) {
    AveragingResult res = antisym_averaging_experiment(
        av.d1, av.d2, av.x0, av.r, av.C0, av.lambda, cfg.tolerance, cfg.params,
        cfg.solve);
    res.report.artifacts = {"averaging_report.json"};
    out.write_report("averaging_report.json", res.report);
    reports.push_back(res.report);
    log << "antisym averaging: delta = " << format_double(res.delta)
        << ", w(x0,t0) = " << format_double(res.u_at_probe) << ", verdict "
        << verdict_name(res.report.conclusion.verdict) << "\n";
    return;
  }
  std::vector<AveragingResult> results(av.distance_shifts.size());
  parallel_for(av.distance_shifts.size(), [&](std::size_t k) {
    const double shift = av.distance_shifts[k];
    results[k] = averaging_effect_experiment(av.d1 + shift, av.d2 + shift,
                                             av.x0, av.r, av.C0, cfg.tolerance,
                                             cfg.params, cfg.solve);
  });
  bool monotone = true;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const double dist = (av.d1 + av.distance_shifts[k]) - (av.x0 + av.r);
    sweep_rows.push_back({dist, results[k].delta, results[k].u_at_probe,
                          results[k].report.conclusion.verdict == Verdict::holds
                              ? 1.0
                              : 0.0});
    if (k > 0 && results[k].delta > results[k - 1].delta + 1e-15)
      monotone = false;
  }
  out.write_csv("averaging_sweep.csv", {"dist", "delta", "u_probe", "holds"},
                sweep_rows);
  ExperimentReport& rep = results[0].report;
  rep.add_hypothesis_flag("C1 nonincreasing with distance", monotone);
  rep.artifacts = {"averaging_sweep.csv"};
  out.write_report("averaging_report.json", rep);
  reports.push_back(rep);
  log << "averaging: delta = " << format_double(results[0].delta)
      << ", u(x0,t0) = " << format_double(results[0].u_at_probe)
      << ", distance sweep monotone = " << (monotone ? "yes" : "no") << "\n";
}

void run_narrow_region(const RunConfig& cfg, OutputWriter& out,
                       std::vector<ExperimentReport>& reports,
                       std::ostream& log) {
  const auto& nr = cfg.narrow_region;
  SolveConfig scfg = cfg.solve;
  std::vector<NarrowRegionResult> results(nr.l_values.size());
  parallel_for(nr.l_values.size(), [&](std::size_t k) {
    results[k] = narrow_region_experiment(
        nr.l_values[k], nr.lambda, FunctionDescriptor::constant(nr.c_const),
        cfg.tolerance, cfg.params, scfg, nr.dip_depth);
  });
  std::vector<std::vector<double>> rows;
  double l_star = 0.0;
  std::vector<std::pair<double, bool>> outcomes;
  for (std::size_t k = 0; k < results.size(); ++k)
    outcomes.emplace_back(nr.l_values[k],
                          results[k].report.conclusion.verdict == Verdict::holds);
  std::sort(outcomes.begin(), outcomes.end());
  for (const auto& [l, ok] : outcomes) {
    if (ok) l_star = l;
    else break;
  }
  for (std::size_t k = 0; k < results.size(); ++k)
    rows.push_back({nr.l_values[k], results[k].min_w_late,
                    results[k].report.conclusion.verdict == Verdict::holds
                        ? 1.0
                        : 0.0});
  out.write_csv("narrow_region_sweep.csv", {"l", "min_w_late", "holds"}, rows);
  ExperimentReport rep = results[0].report;
  rep.name = "narrow_region_sweep";
  rep.artifacts = {"narrow_region_sweep.csv"};
  rep.add_hypothesis_flag("empirical l* recorded", l_star > 0.0);
  out.write_report("narrow_region_report.json", rep);
  reports.push_back(rep);
  log << "narrow-region: empirical l* = " << format_double(l_star)
      << " (c = " << format_double(nr.c_const) << ")\n";
}

void run_moving_plane(const RunConfig& cfg, OutputWriter& out,
                      std::vector<ExperimentReport>& reports,
                      std::ostream& log) {
  IvpProblem pb;
  pb.grid = cfg.grid;
  pb.params = cfg.params;
  pb.reaction = cfg.reaction;
  pb.prehistory = cfg.prehistory;
  if (cfg.exterior) {
    pb.exterior = *cfg.exterior;
  } else {
    // Truncated half space: zero left of the wall, far field frozen at the
    // reaction equilibrium beyond the truncation.
    double far_value = 0.0;
    if (cfg.reaction.family == ReactionFamily::logistic_like)
      far_value = cfg.reaction.params[0];
    const double L = cfg.grid.x_max[0];
    pb.exterior = SpaceTimeFn::of_space(FunctionDescriptor::tabulated(
        -1.0, (L + 1.0) / 3.0, {0.0, 0.0, far_value, far_value},
        TailClass::eventually_constant(far_value, L + 5.0)));
  }
  pb.cfg = cfg.solve;
  IvpResult res = run_ivp(pb);

  std::vector<double> lams;
  for (double lam = cfg.moving_plane.lambda_min;
       lam <= cfg.moving_plane.lambda_max + 1e-12;
       lam += cfg.moving_plane.lambda_step)
    lams.push_back(lam);
  PlaneScanResult scan = moving_plane_scan(res.traj, lams, cfg.tolerance,
                                           cfg.moving_plane.steadiness_threshold);

  std::vector<std::vector<double>> rows;
  for (const auto& r : scan.rows)
    rows.push_back({r.lambda, r.min_w, r.argmin_x, r.argmin_t});
  out.write_csv("plane_scan.csv", {"lambda", "min_w", "argmin_x", "argmin_t"},
                rows);

  std::vector<std::pair<double, double>> late;
  const std::size_t last = res.traj.level_count() - 1;
  for (std::size_t i = 0; i < res.traj.grid.node_count(); ++i)
    late.emplace_back(res.traj.grid.node(i).x1(), res.traj.levels[last][i]);
  out.write_plot("late_profile.csv", "x", "u", late);

  ExperimentReport rep;
  rep.name = "moving_plane_monotonicity";
  rep.hypothesis_tol = cfg.tolerance.hypothesis_tol;
  rep.conclusion_tol = cfg.tolerance.conclusion_tol;
  rep.add_hypothesis_flag("reaction satisfies f(0)>=0, f'(0)<=0, sup f' finite",
                          cfg.reaction.monotonicity_hypotheses());
  rep.add_hypothesis("trajectory reached steadiness",
                     cfg.moving_plane.steadiness_threshold -
                         scan.steadiness_increment);
  rep.conclude_nonnegative("min forward difference on the near half",
                           std::isinf(scan.lambda0) ? scan.min_forward_diff
                                                    : -1.0);
  rep.artifacts = {"plane_scan.csv", "late_profile.csv"};
  out.write_report("moving_plane_report.json", rep);
  reports.push_back(rep);
  log << "moving-plane: lambda0 = "
      << (std::isinf(scan.lambda0) ? "none" : format_double(scan.lambda0))
      << ", monotone = " << (scan.monotone ? "yes" : "no")
      << ", min forward diff = " << format_double(scan.min_forward_diff) << "\n";
}

void run_verify_appendix(const RunConfig& cfg, OutputWriter& out,
                         std::vector<ExperimentReport>& reports,
                         std::ostream& log) {
  std::vector<std::vector<double>> bound_rows;
  std::vector<std::vector<double>> scale_rows;
  ExperimentReport rep;
  rep.name = "appendix_cutoff_bounds";
  rep.hypothesis_tol = cfg.tolerance.hypothesis_tol;
  rep.conclusion_tol = cfg.tolerance.conclusion_tol;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (double alpha : {0.25, 0.5, 0.75}) {
    const FracParams p = FracParams::make(alpha, cfg.params.s);
    const CutoffBoundResult cb = check_cutoff_bound(p, cfg.solve.time_quadrature);
    bound_rows.push_back({alpha, cb.sup_abs, cb.bound, cb.lipschitz,
                          cb.satisfied ? 1.0 : 0.0});
    worst_margin = std::min(worst_margin, cb.bound - cb.sup_abs);
    for (double lam : {0.5, 2.0, std::pow(0.5, 2.0 * cfg.params.s / alpha)}) {
      const ScalingCheckResult sc =
          check_scaling_identity(p, lam, cfg.solve.time_quadrature);
      scale_rows.push_back({alpha, lam, sc.max_rel_err, sc.prefactor_observed,
                            sc.prefactor_expected});
    }
  }
  out.write_csv("cutoff_bounds.csv",
                {"alpha", "sup_abs", "bound", "lipschitz", "satisfied"},
                bound_rows);
  out.write_csv("scaling_identity.csv",
                {"alpha", "lambda", "max_rel_err", "prefactor_observed",
                 "prefactor_expected"},
                scale_rows);
  rep.add_hypothesis("sup |d_t^a eta| below the bound for every alpha",
                     worst_margin);
  rep.conclude_nonnegative("worst bound margin over the alpha sweep",
                           worst_margin);
  rep.artifacts = {"cutoff_bounds.csv", "scaling_identity.csv"};
  out.write_report("appendix_report.json", rep);
  reports.push_back(rep);
  log << "verify-appendix: worst bound margin = " << format_double(worst_margin)
      << "\n";
}

void run_operators(const RunConfig& cfg, OutputWriter& out,
                   std::vector<ExperimentReport>& reports, std::ostream& log) {
  const auto& op = cfg.operators;
  const double hist_depth = 20.0;
  const double dt = 1e-3;
  const int n_hist =
      static_cast<int>(std::llround((op.t_max - (op.t_min - hist_depth)) / dt)) + 1;
  TimeTrace tr = sample_trace(op.time_fn, op.t_min - hist_depth, dt, n_hist);
  TimeQuadratureConfig tq = cfg.solve.time_quadrature;
  tq.tail_mode = TimeTailMode::adaptive_then_constant;
  if (op.time_fn.tail.kind == TailKind::eventually_constant)
    tq.tail_mode = TimeTailMode::analytic_constant;

  std::vector<std::pair<double, double>> time_rows;
  for (int k = 0; k < op.n_samples; ++k) {
    const double t = op.t_min + (op.t_max - op.t_min) * k / (op.n_samples - 1);
    const double snapped =
        tr.t_start + std::round((t - tr.t_start) / dt) * dt;
    time_rows.emplace_back(snapped, marchaud(tr, snapped, cfg.params, tq));
  }
  out.write_plot("marchaud_series.csv", "t", "dta_u", time_rows);

  std::vector<std::pair<double, double>> space_rows;
  for (int k = 0; k < op.n_samples; ++k) {
    const double x = op.x_min + (op.x_max - op.x_min) * k / (op.n_samples - 1);
    space_rows.emplace_back(
        x, frac_laplacian(op.space_fn, Point(x), cfg.params,
                          cfg.solve.space_quadrature));
  }
  out.write_plot("frac_laplacian_series.csv", "x", "lap_u", space_rows);

  ExperimentReport rep;
  rep.name = "operators_series";
  rep.conclusion.description = "operator series emitted";
  rep.conclusion.verdict = Verdict::holds;
  rep.artifacts = {"marchaud_series.csv", "frac_laplacian_series.csv"};
  out.write_report("operators_report.json", rep);
  reports.push_back(rep);
  log << "operators: wrote " << time_rows.size() << " time samples and "
      << space_rows.size() << " space samples\n";
}

int run_report(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir(cfg.output_dir);
  const fs::path manifest = dir / "MANIFEST";
  if (!fs::exists(manifest)) {
    log << "report: no MANIFEST under " << cfg.output_dir << "\n";
    return 5;
  }
  std::ifstream in(manifest);
  std::string line;
  log << "artifacts in " << cfg.output_dir << ":\n";
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    log << "  " << line;
    if (line.size() > 5 && line.substr(line.size() - 5) == ".json") {
      std::ifstream jf(dir / line);
      try {
        json j = json::parse(jf);
        if (j.contains("conclusion"))
          log << "  [" << j["name"].get<std::string>() << ": "
              << j["conclusion"]["verdict"].get<std::string>() << "]";
      } catch (...) {
      }
    }
    log << "\n";
  }
  return 0;
}

}  // namespace

RunOutcome run(const RunConfig& cfg) {
  RunOutcome outcome;
  std::ostringstream log;
  if (cfg.command == Command::report) {
    outcome.exit_code = run_report(cfg, log);
    outcome.summary = log.str();
    return outcome;
  }

  OutputWriter out(cfg);
  try {
    switch (cfg.command) {
      case Command::simulate:
        run_simulate(cfg, out, outcome.reports, log);
        break;
      case Command::counterexample:
        run_counterexample(cfg, out, outcome.reports, log);
        break;
      case Command::averaging:
        run_averaging(cfg, out, outcome.reports, log);
        break;
      case Command::narrow_region:
        run_narrow_region(cfg, out, outcome.reports, log);
        break;
      case Command::moving_plane:
        run_moving_plane(cfg, out, outcome.reports, log);
        break;
      case Command::verify_appendix:
        run_verify_appendix(cfg, out, outcome.reports, log);
        break;
      case Command::operators:
        run_operators(cfg, out, outcome.reports, log);
        break;
      case Command::report:
        break;
    }
  } catch (const std::exception& e) {
    out.finalize();
    outcome.exit_code = 5;
    outcome.summary = log.str() + "numerical failure: " + e.what() + "\n";
    return outcome;
  }
  out.finalize();
  outcome.files = out.files();

  if (!out.mismatches().empty()) {
    outcome.exit_code = 5;
    log << "check mode: " << out.mismatches().size()
        << " file(s) differ from stored results:";
    for (const auto& f : out.mismatches()) log << " " << f;
    log << "\n";
    outcome.summary = log.str();
    return outcome;
  }

  // Expectations block: every named experiment must match its verdict.
  for (const auto& [name, expected] : cfg.expectations) {
    bool found = false;
    for (const auto& rep : outcome.reports) {
      if (rep.name != name) continue;
      found = true;
      if (rep.conclusion.verdict != expected) {
        log << "expectation mismatch: " << name << " expected "
            << verdict_name(expected) << ", got "
            << verdict_name(rep.conclusion.verdict) << "\n";
        outcome.exit_code = 4;
      }
    }
    if (!found) {
      log << "expectation names unknown experiment: " << name << "\n";
      outcome.exit_code = 4;
    }
  }
  outcome.summary = log.str();
  return outcome;
}

}  // namespace fracdual
