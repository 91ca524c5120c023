#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adopt::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kInfeasible = 2,
  kInputError = 3,
};

/// Parses `args` (without the program name) and runs the subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adopt::cli
