#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sprank::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,    ///< unreadable file, parse or shape error
  kUsageError = 2,    ///< invalid flags or flag values
  kNegative = 3,      ///< computed fine, but the answer is negative
  kBudgetExceeded = 4,
};

/// Runs the command line `args` (args[0] is the program name) and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sprank::cli
