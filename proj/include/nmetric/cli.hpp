#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nmetric::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kUsage = 2,
  kNumerical = 3,
  kViolationAbsent = 4,
};

/// Runs one command line (without the program name). Reports go to `out`
/// unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nmetric::cli
