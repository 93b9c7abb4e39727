#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "fracdual/core/report.hpp"
#include "fracdual/principles/principles.hpp"
#include "fracdual/solver/solver.hpp"

namespace fracdual {

enum class Command {
  operators,
  simulate,
  counterexample,
  averaging,
  narrow_region,
  moving_plane,
  verify_appendix,
  report,
};

const char* command_name(Command c);
Command command_from_name(const std::string& name);

/// Config / CLI failures carry the process exit code: 2 for malformed input,
/// 3 for validation errors (with a field-path message).
struct ConfigError : std::runtime_error {
  int exit_code;
  ConfigError(int code, const std::string& msg)
      : std::runtime_error(msg), exit_code(code) {}
};

struct CounterexampleParams {
  double R = 100.0;
  int n_probe = 200;
};

struct AveragingParams {
  double d1 = 2.0, d2 = 4.0;
  double x0 = 0.0, r = 0.5, C0 = 1.0;
  bool antisym = false;
  double lambda = 6.0;
  std::vector<double> distance_shifts{0.0, 1.0, 2.0, 4.0};
};

struct NarrowRegionParams {
  double lambda = 6.0;
  std::vector<double> l_values{0.05, 0.1, 0.25, 0.5, 1.0};
  double c_const = 5.0;
  double dip_depth = 0.5;
};

struct MovingPlaneParams {
  double lambda_min = 0.5, lambda_max = 9.5, lambda_step = 0.5;
  double steadiness_threshold = 1e-6;
};

struct OperatorsParams {
  FunctionDescriptor time_fn = FunctionDescriptor::exponential(1.0, 1.0);
  FunctionDescriptor space_fn = FunctionDescriptor::sine(1.0, 1.0, 0.0);
  double t_min = 0.0, t_max = 2.0;
  double x_min = -3.0, x_max = 3.0;
  int n_samples = 101;
};

struct RunConfig {
  Command command = Command::simulate;
  std::string output_dir = "out";
  long seed = 1;
  bool check_mode = false;

  FracParams params = FracParams::make(0.5, 0.5);
  SpaceGrid grid =
      SpaceGrid::make_1d(0.0, 20.0, 201, DomainKind::half_space_truncation, 0.0,
                         20.0);
  SolveConfig solve;
  ReactionSpec reaction = ReactionSpec::logistic_like(1.0);
  SpaceTimeFn prehistory = SpaceTimeFn::zero();
  std::optional<SpaceTimeFn> exterior;  // default derived per command

  CounterexampleParams counterexample;
  AveragingParams averaging;
  NarrowRegionParams narrow_region;
  MovingPlaneParams moving_plane;
  OperatorsParams operators;
  PrincipleTolerance tolerance;

  std::map<std::string, Verdict> expectations;
};

/// Parses and fully validates a structured-text config file. Unknown keys
/// are rejected; every violation names the offending field path.
RunConfig parse_config(const std::string& path);

/// Same, from an in-memory document (used by tests and --config handling).
RunConfig parse_config_text(const std::string& text);

std::string descriptor_to_json_text(const FunctionDescriptor& f);
FunctionDescriptor descriptor_from_json_text(const std::string& text);

}  // namespace fracdual
