#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zeno::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kConfigError = 2,
  kNonConvergence = 3,
};

/// Runs the command line `args` (without the program name). Results go to
/// `--out` when given, otherwise to `out`; messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "4deg", "0.07rad" or a bare number (radians) to radians.
double parse_angle(const std::string& text);

}  // namespace zeno::cli
