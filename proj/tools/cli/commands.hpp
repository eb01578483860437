#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kelly::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Subcommands: verify, kelly, optimize, sweep, backtest.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kelly::cli
