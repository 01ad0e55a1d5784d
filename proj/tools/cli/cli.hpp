#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ldc::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,  // verify found violations
  kUsage = 2,
  kInput = 3,    // unreadable or malformed file
  kPrecondition = 4,
};

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ldc::cli
