#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sgt {

enum ExitCode : int {
  kExitOk = 0,
  kExitPropertyFailed = 1,
  kExitInvalidParameters = 2,
  kExitBudgetExceeded = 3,
};

/// Runs one command line (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sgt
