#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace normclust::cli {

/// Runs the command line `args` (args[0] is the program name). Returns the
/// exit code: 0 success, 1 infeasible, 2 input error, 3 failed --verify.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace normclust::cli
