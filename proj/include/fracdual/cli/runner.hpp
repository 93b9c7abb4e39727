#pragma once

#include <string>
#include <vector>

#include "fracdual/cli/config.hpp"

namespace fracdual {

/// Shortest round-trip decimal formatting; CSV payloads are byte-stable
/// across runs with the same config and seed.
std::string format_double(double v);

/// Worker count: FRACDUAL_THREADS caps the pool, hardware concurrency
/// otherwise (at least 1).
unsigned worker_count();

/// Runs independent jobs indexed 0..n-1 on the pool; results are committed
/// by index so output order is deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& job);

struct RunOutcome {
  int exit_code = 0;
  std::vector<std::string> files;                    // MANIFEST contents
  std::vector<ExperimentReport> reports;
  std::string summary;                               // printed to stdout
};

/// Executes the configured pipeline: writes trajectory/report/plot-data
/// files plus a MANIFEST under output_dir, evaluates the expectations block,
/// and returns exit code 0 on success, 4 on verdict mismatch, 5 on numerical
/// failure. With check_mode, fresh numeric payloads are compared against
/// stored ones instead of overwriting blindly (mismatch -> 5).
RunOutcome run(const RunConfig& config);

}  // namespace fracdual
