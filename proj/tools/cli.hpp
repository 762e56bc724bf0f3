#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kpwave::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kUsageError = 2,
  kInstability = 3,
};

/// Runs the command line `args` (without the program name), writing normal output
/// to `out` and diagnostics to `err`. Returns the process exit code.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kpwave::cli
