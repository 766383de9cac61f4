#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hu::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
  kOk = 0,
  kInputError = 1,
  kStructuralViolation = 2,
  kBoundViolation = 3,
  kConfigError = 4,
};

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hu::cli
