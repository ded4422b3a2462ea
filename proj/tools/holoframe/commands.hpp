#pragma once

#include "run_config.hpp"

namespace holoframe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMalformed = 2;
inline constexpr int kExitNonintegrable = 3;
inline constexpr int kExitBudget = 4;
inline constexpr int kExitIdentityFail = 5;

/// Runs the configured command, writes its artifacts into the output
/// directory and returns the process exit code. Errors from malformed input
/// propagate as holoframe::Error.
int run_command(const RunConfig& config);

int cmd_check(const RunConfig& config);
int cmd_solve(const RunConfig& config);
int cmd_verify(const RunConfig& config);
int cmd_norms(const RunConfig& config);

}  // namespace holoframe::cli
