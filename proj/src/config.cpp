#include "fracdual/cli/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace fracdual {

using nlohmann::json;

const char* command_name(Command c) {
  switch (c) {
    case Command::operators: return "operators";
    case Command::simulate: return "simulate";
    case Command::counterexample: return "counterexample";
    case Command::averaging: return "averaging";
    case Command::narrow_region: return "narrow-region";
    case Command::moving_plane: return "moving-plane";
    case Command::verify_appendix: return "verify-appendix";
    case Command::report: return "report";
  }
  return "?";
}

Command command_from_name(const std::string& name) {
  for (int c = 0; c <= static_cast<int>(Command::report); ++c)
    if (name == command_name(static_cast<Command>(c)))
      return static_cast<Command>(c);
  throw ConfigError(3, "command: unknown command '" + name + "'");
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(3, path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path,
                    const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      fail(path + "." + item.key(), "unknown key");
}

double need_number(const json& obj, const std::string& path,
                   const std::string& key, std::optional<double> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    fail(path + "." + key, "missing required number");
  }
  if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
  return obj[key].get<double>();
}

std::vector<double> number_list(const json& obj, const std::string& path,
                                const std::string& key,
                                std::vector<double> fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_array()) fail(path + "." + key, "expected an array");
  std::vector<double> out;
  for (const auto& v : obj[key]) {
    if (!v.is_number()) fail(path + "." + key, "expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

TailClass tail_from_json(const json& j, const std::string& path) {
  reject_unknown(j, path, {"kind", "value", "cutoff"});
  if (!j.contains("kind") || !j["kind"].is_string())
    fail(path + ".kind", "expected a string");
  const std::string kind = j["kind"].get<std::string>();
  const double value = need_number(j, path, "value", 0.0);
  const double cutoff = need_number(j, path, "cutoff", 0.0);
  if (kind == "eventually_constant")
    return TailClass::eventually_constant(value, cutoff);
  if (kind == "bounded") return TailClass::bounded(value);
  if (kind == "power_growth") return TailClass::power_growth(value);
  fail(path + ".kind", "unknown tail kind '" + kind + "'");
}

json tail_to_json(const TailClass& t) {
  const char* kind = t.kind == TailKind::eventually_constant
                         ? "eventually_constant"
                         : (t.kind == TailKind::bounded ? "bounded"
                                                        : "power_growth");
  return json{{"kind", kind}, {"value", t.value}, {"cutoff", t.cutoff}};
}

FunctionDescriptor descriptor_from_json(const json& j, const std::string& path) {
  reject_unknown(j, path, {"family", "params", "tail"});
  if (!j.contains("family") || !j["family"].is_string())
    fail(path + ".family", "expected a string");
  std::vector<double> params = number_list(j, path, "params", {});
  TailClass tail = j.contains("tail")
                       ? tail_from_json(j["tail"], path + ".tail")
                       : TailClass::bounded(1.0);
  Family fam;
  try {
    fam = FunctionDescriptor::family_from_name(j["family"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(path + ".family", e.what());
  }
  try {
    return FunctionDescriptor(fam, std::move(params), tail);
  } catch (const std::invalid_argument& e) {
    fail(path + ".params", e.what());
  }
}

json descriptor_to_json(const FunctionDescriptor& f) {
  return json{{"family", FunctionDescriptor::family_name(f.family)},
              {"params", f.params},
              {"tail", tail_to_json(f.tail)}};
}

SpaceTimeFn space_time_from_json(const json& j, const std::string& path) {
  reject_unknown(j, path, {"space", "time"});
  SpaceTimeFn st;
  if (j.contains("space"))
    st.space = descriptor_from_json(j["space"], path + ".space");
  if (j.contains("time"))
    st.time = descriptor_from_json(j["time"], path + ".time");
  return st;
}

Verdict verdict_from_string(const std::string& s, const std::string& path) {
  if (s == "holds") return Verdict::holds;
  if (s == "violated") return Verdict::violated;
  if (s == "inconclusive") return Verdict::inconclusive;
  fail(path, "expected holds|violated|inconclusive");
}

RunConfig from_json(const json& root) {
  RunConfig cfg;
  reject_unknown(root, "config",
                 {"command", "output_dir", "seed", "problem", "counterexample",
                  "averaging", "narrow_region", "moving_plane", "operators",
                  "tolerance", "expectations"});

  if (root.contains("command")) {
    if (!root["command"].is_string()) fail("config.command", "expected a string");
    cfg.command = command_from_name(root["command"].get<std::string>());
  }
  if (root.contains("output_dir")) {
    if (!root["output_dir"].is_string())
      fail("config.output_dir", "expected a string");
    cfg.output_dir = root["output_dir"].get<std::string>();
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_integer()) fail("config.seed", "expected an integer");
    cfg.seed = root["seed"].get<long>();
  }

  if (root.contains("problem")) {
    const json& p = root["problem"];
    const std::string pp = "config.problem";
    reject_unknown(p, pp,
                   {"frac_params", "grid", "solve", "reaction", "prehistory",
                    "exterior"});
    if (p.contains("frac_params")) {
      const json& fp = p["frac_params"];
      const std::string fpp = pp + ".frac_params";
      reject_unknown(fp, fpp, {"alpha", "s", "dim"});
      const double alpha = need_number(fp, fpp, "alpha", 0.5);
      const double s = need_number(fp, fpp, "s", 0.5);
      const int dim = static_cast<int>(need_number(fp, fpp, "dim", 1.0));
      try {
        cfg.params = FracParams::make(alpha, s, dim);
      } catch (const std::invalid_argument& e) {
        fail(fpp + ".alpha", e.what());
      }
    }
    if (p.contains("grid")) {
      const json& g = p["grid"];
      const std::string gp = pp + ".grid";
      reject_unknown(g, gp, {"x_min", "x_max", "n", "kind", "a", "b"});
      const double x_min = need_number(g, gp, "x_min", 0.0);
      const double x_max = need_number(g, gp, "x_max", 20.0);
      const int n = static_cast<int>(need_number(g, gp, "n", 201.0));
      std::string kind = "half_space_truncation";
      if (g.contains("kind")) {
        if (!g["kind"].is_string()) fail(gp + ".kind", "expected a string");
        kind = g["kind"].get<std::string>();
      }
      DomainKind dk;
      if (kind == "interval") dk = DomainKind::interval;
      else if (kind == "ball") dk = DomainKind::ball;
      else if (kind == "slab") dk = DomainKind::slab;
      else if (kind == "half_space_truncation") dk = DomainKind::half_space_truncation;
      else fail(gp + ".kind", "unknown domain kind '" + kind + "'");
      const double a = need_number(g, gp, "a", x_min);
      const double b = need_number(g, gp, "b", x_max);
      try {
        cfg.grid = SpaceGrid::make_1d(x_min, x_max, n, dk, a, b);
      } catch (const std::invalid_argument& e) {
        fail(gp, e.what());
      }
    }
    if (p.contains("solve")) {
      const json& s = p["solve"];
      const std::string sp = pp + ".solve";
      reject_unknown(s, sp,
                     {"dt", "n_steps", "linear_solver_tol", "residual_every",
                      "time_quadrature", "space_quadrature"});
      cfg.solve.dt = need_number(s, sp, "dt", cfg.solve.dt);
      cfg.solve.n_steps =
          static_cast<int>(need_number(s, sp, "n_steps", cfg.solve.n_steps));
      cfg.solve.linear_solver_tol =
          need_number(s, sp, "linear_solver_tol", cfg.solve.linear_solver_tol);
      cfg.solve.residual_every = static_cast<int>(
          need_number(s, sp, "residual_every", cfg.solve.residual_every));
      if (s.contains("time_quadrature")) {
        const json& tq = s["time_quadrature"];
        const std::string tqp = sp + ".time_quadrature";
        reject_unknown(tq, tqp, {"scheme", "tail_mode", "t_big", "adaptive_tol"});
        if (tq.contains("scheme")) {
          if (tq["scheme"].get<std::string>() != "l1_piecewise_linear")
            fail(tqp + ".scheme", "unknown scheme");
        }
        if (tq.contains("tail_mode")) {
          const std::string m = tq["tail_mode"].get<std::string>();
          if (m == "analytic_constant")
            cfg.solve.time_quadrature.tail_mode = TimeTailMode::analytic_constant;
          else if (m == "adaptive_then_constant")
            cfg.solve.time_quadrature.tail_mode =
                TimeTailMode::adaptive_then_constant;
          else fail(tqp + ".tail_mode", "unknown mode");
        }
        cfg.solve.time_quadrature.t_big =
            need_number(tq, tqp, "t_big", cfg.solve.time_quadrature.t_big);
        cfg.solve.time_quadrature.adaptive_tol = need_number(
            tq, tqp, "adaptive_tol", cfg.solve.time_quadrature.adaptive_tol);
        try {
          cfg.solve.time_quadrature.validate();
        } catch (const std::invalid_argument& e) {
          fail(tqp, e.what());
        }
      }
      if (s.contains("space_quadrature")) {
        const json& sq = s["space_quadrature"];
        const std::string sqp = sp + ".space_quadrature";
        reject_unknown(sq, sqp,
                       {"inner_radius_factor", "z_max", "boundary_refine",
                        "tail_mode"});
        cfg.solve.space_quadrature.inner_radius_factor =
            need_number(sq, sqp, "inner_radius_factor",
                        cfg.solve.space_quadrature.inner_radius_factor);
        cfg.solve.space_quadrature.z_max =
            need_number(sq, sqp, "z_max", cfg.solve.space_quadrature.z_max);
        cfg.solve.space_quadrature.boundary_refine = static_cast<int>(
            need_number(sq, sqp, "boundary_refine",
                        cfg.solve.space_quadrature.boundary_refine));
        if (sq.contains("tail_mode")) {
          const std::string m = sq["tail_mode"].get<std::string>();
          if (m == "constant_exact")
            cfg.solve.space_quadrature.tail_mode = SpaceTailMode::constant_exact;
          else if (m == "power_series")
            cfg.solve.space_quadrature.tail_mode = SpaceTailMode::power_series;
          else fail(sqp + ".tail_mode", "unknown mode");
        }
        try {
          cfg.solve.space_quadrature.validate();
        } catch (const std::invalid_argument& e) {
          fail(sqp, e.what());
        }
      }
      try {
        cfg.solve.validate();
      } catch (const std::invalid_argument& e) {
        fail(sp, e.what());
      }
    }
    if (p.contains("reaction")) {
      const json& r = p["reaction"];
      const std::string rp = pp + ".reaction";
      reject_unknown(r, rp, {"family", "params"});
      if (!r.contains("family") || !r["family"].is_string())
        fail(rp + ".family", "expected a string");
      ReactionFamily rf;
      try {
        rf = ReactionSpec::family_from_name(r["family"].get<std::string>());
      } catch (const std::invalid_argument& e) {
        fail(rp + ".family", e.what());
      }
      std::vector<double> rpar = number_list(r, rp, "params", {});
      const std::size_t need =
          rf == ReactionFamily::zero ? 0 : (rf == ReactionFamily::affine ? 2 : 1);
      if (rpar.size() != need) fail(rp + ".params", "wrong parameter count");
      cfg.reaction = ReactionSpec{rf, std::move(rpar)};
    }
    if (p.contains("prehistory"))
      cfg.prehistory = space_time_from_json(p["prehistory"], pp + ".prehistory");
    if (p.contains("exterior"))
      cfg.exterior = space_time_from_json(p["exterior"], pp + ".exterior");
  }

  if (root.contains("counterexample")) {
    const json& c = root["counterexample"];
    const std::string cp = "config.counterexample";
    reject_unknown(c, cp, {"R", "n_probe"});
    cfg.counterexample.R = need_number(c, cp, "R", cfg.counterexample.R);
    cfg.counterexample.n_probe =
        static_cast<int>(need_number(c, cp, "n_probe", cfg.counterexample.n_probe));
    if (!(cfg.counterexample.R > 0.0)) fail(cp + ".R", "R must be > 0");
    if (cfg.counterexample.n_probe < 10) fail(cp + ".n_probe", "need >= 10 probes");
  }
  if (root.contains("averaging")) {
    const json& a = root["averaging"];
    const std::string ap = "config.averaging";
    reject_unknown(a, ap,
                   {"d1", "d2", "x0", "r", "C0", "antisym", "lambda",
                    "distance_shifts"});
    auto& av = cfg.averaging;
    av.d1 = need_number(a, ap, "d1", av.d1);
    av.d2 = need_number(a, ap, "d2", av.d2);
    av.x0 = need_number(a, ap, "x0", av.x0);
    av.r = need_number(a, ap, "r", av.r);
    av.C0 = need_number(a, ap, "C0", av.C0);
    av.lambda = need_number(a, ap, "lambda", av.lambda);
    if (a.contains("antisym")) {
      if (!a["antisym"].is_boolean()) fail(ap + ".antisym", "expected a boolean");
      av.antisym = a["antisym"].get<bool>();
    }
    av.distance_shifts =
        number_list(a, ap, "distance_shifts", av.distance_shifts);
    if (!(av.r > 0.0)) fail(ap + ".r", "r must be > 0");
    if (!(av.d2 > av.d1)) fail(ap + ".d2", "d2 must exceed d1");
  }
  if (root.contains("narrow_region")) {
    const json& nr = root["narrow_region"];
    const std::string np = "config.narrow_region";
    reject_unknown(nr, np, {"lambda", "l_values", "c_const", "dip_depth"});
    auto& n = cfg.narrow_region;
    n.lambda = need_number(nr, np, "lambda", n.lambda);
    n.l_values = number_list(nr, np, "l_values", n.l_values);
    n.c_const = need_number(nr, np, "c_const", n.c_const);
    n.dip_depth = need_number(nr, np, "dip_depth", n.dip_depth);
    for (double l : n.l_values)
      if (!(l > 0.0)) fail(np + ".l_values", "every l must be > 0");
  }
  if (root.contains("moving_plane")) {
    const json& mp = root["moving_plane"];
    const std::string mpp = "config.moving_plane";
    reject_unknown(mp, mpp,
                   {"lambda_min", "lambda_max", "lambda_step",
                    "steadiness_threshold"});
    auto& m = cfg.moving_plane;
    m.lambda_min = need_number(mp, mpp, "lambda_min", m.lambda_min);
    m.lambda_max = need_number(mp, mpp, "lambda_max", m.lambda_max);
    m.lambda_step = need_number(mp, mpp, "lambda_step", m.lambda_step);
    m.steadiness_threshold =
        need_number(mp, mpp, "steadiness_threshold", m.steadiness_threshold);
    if (!(m.lambda_step > 0.0)) fail(mpp + ".lambda_step", "step must be > 0");
    if (!(m.lambda_max >= m.lambda_min)) fail(mpp + ".lambda_max", "max < min");
  }
  if (root.contains("operators")) {
    const json& op = root["operators"];
    const std::string opp = "config.operators";
    reject_unknown(op, opp,
                   {"time_fn", "space_fn", "t_min", "t_max", "x_min", "x_max",
                    "n_samples"});
    auto& o = cfg.operators;
    if (op.contains("time_fn"))
      o.time_fn = descriptor_from_json(op["time_fn"], opp + ".time_fn");
    if (op.contains("space_fn"))
      o.space_fn = descriptor_from_json(op["space_fn"], opp + ".space_fn");
    o.t_min = need_number(op, opp, "t_min", o.t_min);
    o.t_max = need_number(op, opp, "t_max", o.t_max);
    o.x_min = need_number(op, opp, "x_min", o.x_min);
    o.x_max = need_number(op, opp, "x_max", o.x_max);
    o.n_samples = static_cast<int>(need_number(op, opp, "n_samples", o.n_samples));
    if (o.n_samples < 2) fail(opp + ".n_samples", "need >= 2 samples");
  }
  if (root.contains("tolerance")) {
    const json& t = root["tolerance"];
    const std::string tp = "config.tolerance";
    reject_unknown(t, tp, {"hypothesis_tol", "conclusion_tol"});
    cfg.tolerance.hypothesis_tol =
        need_number(t, tp, "hypothesis_tol", cfg.tolerance.hypothesis_tol);
    cfg.tolerance.conclusion_tol =
        need_number(t, tp, "conclusion_tol", cfg.tolerance.conclusion_tol);
    if (!(cfg.tolerance.hypothesis_tol > 0.0))
      fail(tp + ".hypothesis_tol", "must be > 0");
    if (!(cfg.tolerance.conclusion_tol > 0.0))
      fail(tp + ".conclusion_tol", "must be > 0");
  }
  if (root.contains("expectations")) {
    const json& ex = root["expectations"];
    if (!ex.is_object()) fail("config.expectations", "expected an object");
    for (const auto& item : ex.items()) {
      if (!item.value().is_string())
        fail("config.expectations." + item.key(), "expected a string verdict");
      cfg.expectations[item.key()] = verdict_from_string(
          item.value().get<std::string>(), "config.expectations." + item.key());
    }
  }
  return cfg;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(2, std::string("config parse error: ") + e.what());
  }
  return from_json(root);
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(2, "cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

std::string descriptor_to_json_text(const FunctionDescriptor& f) {
  return descriptor_to_json(f).dump();
}

FunctionDescriptor descriptor_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(2, std::string("descriptor parse error: ") + e.what());
  }
  return descriptor_from_json(j, "descriptor");
}

}  // namespace fracdual
