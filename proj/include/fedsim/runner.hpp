#pragma once

#include <string>
#include <vector>

#include "fedsim/config.hpp"
#include "fedsim/federation.hpp"

namespace fedsim::cli {

// Relative out_dirs are placed under $FEDSIM_OUT_ROOT when that is set.
std::string resolve_out_dir(const std::string& out_dir);

// Execute the config's mode and write out_dir/metrics.csv,
// out_dir/config.resolved and out_dir/summary.txt. Throws on failure after
// removing any partially written outputs.
federation::RunResult run_to_dir(const ExperimentConfig& cfg);

// `run <config> [key=value ...]`; returns the process exit code and prints a
// single-line diagnostic to stderr on failure.
int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides);

// `sweep <config> <key> <v1,v2,...>`: one subdirectory per value plus
// sweep_summary.csv under the base config's out_dir. Individual cell
// failures are recorded and do not stop the sweep; the exit code is nonzero
// if any cell failed.
int cmd_sweep(const std::string& config_path, const std::string& key,
              const std::vector<std::string>& values);

}  // namespace fedsim::cli
