#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "well_revival/cli/config.hpp"
#include "well_revival/cli/serialize.hpp"

namespace well_revival::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

/// Rows of the eta sweep; each row is an independent revival check at tau = 1.
std::vector<SweepRow> run_sweep(const RunConfig& config);

/// Runs one command. Results go to config.out (a directory for simulate, a
/// file otherwise) or to `stdout_sink` when no output path is set. Returns the
/// process exit code for outcome-dependent commands; throws ConfigError,
/// std::invalid_argument or NumericFailure on failure.
int run_command(const std::string& command, const RunConfig& config, std::ostream& stdout_sink);

/// Parses flags already collected as raw values, merges them over the config
/// file named by `config_path` (if any), runs the command and maps failures to
/// exit codes, printing diagnostics to `err`.
int dispatch(const std::string& command, const std::string& config_path, const RawConfig& flags,
             std::ostream& out, std::ostream& err);

}  // namespace well_revival::cli
