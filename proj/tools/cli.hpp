#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padyn::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kBudget = 3,
  kNotStabilized = 4,
  kNoGoodPrime = 5,
};

/// Runs one command line (args excludes the program name) and returns the
/// exit status. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padyn::cli
