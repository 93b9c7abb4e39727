// Command-line front end: evaluates the dual nonlocal operators, runs the
// evolution solver, and drives the principle experiments from config files
// or flags.

#include <CLI11.hpp>
#include <iostream>

#include "fracdual/cli/runner.hpp"

using namespace fracdual;

int main(int argc, char** argv) {
  CLI::App app{"dual fractional operator toolkit"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string output_dir;
  long seed = -1;
  bool check = false;
  double alpha = -1.0, s = -1.0, R = -1.0, lambda_max = -1.0, l = -1.0,
         dt = -1.0;
  int nx = -1;

  app.add_option("--config", config_path, "structured-text config file");
  app.add_option("--output", output_dir, "output directory");
  app.add_option("--seed", seed, "seed for randomized suites");
  app.add_flag("--check", check, "compare fresh results against stored files");
  app.add_option("--alpha", alpha, "time-derivative order in (0,1)");
  app.add_option("--s", s, "space-operator order in (0,1)");
  app.add_option("--R", R, "counterexample past depth");
  app.add_option("--lambda-max", lambda_max, "largest scanned plane position");
  app.add_option("--l", l, "narrow-region half width");
  app.add_option("--dt", dt, "time step");
  app.add_option("--nx", nx, "grid points per axis");

  for (int c = 0; c <= static_cast<int>(Command::report); ++c)
    app.add_subcommand(command_name(static_cast<Command>(c)), "")
        ->fallthrough();

  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = parse_config(config_path);
    for (const auto* sub : app.get_subcommands())
      cfg.command = command_from_name(sub->get_name());

    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (seed >= 0) cfg.seed = seed;
    cfg.check_mode = check;
    if (alpha > 0.0 || s > 0.0)
      cfg.params = FracParams::make(alpha > 0.0 ? alpha : cfg.params.alpha,
                                    s > 0.0 ? s : cfg.params.s, cfg.params.dim);
    if (R > 0.0) cfg.counterexample.R = R;
    if (lambda_max > 0.0) cfg.moving_plane.lambda_max = lambda_max;
    if (l > 0.0) cfg.narrow_region.l_values = {l};
    if (dt > 0.0) cfg.solve.dt = dt;
    if (nx > 1)
      cfg.grid = SpaceGrid::make_1d(cfg.grid.x_min[0], cfg.grid.x_max[0], nx,
                                    cfg.grid.kind, cfg.grid.dom_a[0],
                                    cfg.grid.dom_b[0]);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  RunOutcome outcome = run(cfg);
  std::cout << outcome.summary;
  return outcome.exit_code;
}
