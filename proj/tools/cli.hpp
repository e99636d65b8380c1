#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oss::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kPreconditionError = 3,
};

/// Runs one command line (args exclude the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oss::cli
