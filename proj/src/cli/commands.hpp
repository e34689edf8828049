#pragma once

#include <iosfwd>

#include "cli/config.hpp"

namespace fixtime::cli {

enum ExitCode : int { kOk = 0, kInvalid = 1, kSolverFailure = 2 };

/// Executes a decoded experiment, writing artifacts below cfg.out and a
/// short summary to `out`. Throws ConfigError, InvalidParams, SolverError.
int run(const ExperimentConfig& cfg, std::ostream& out);

/// Full command-line entry point: parses argv, merges --config with flags,
/// runs, and maps failures to exit codes (1 invalid input, 2 solver failure).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Sets the spdlog level from FIXTIME_LOG (error, warn, info, debug).
void configure_logging();

}  // namespace fixtime::cli
