#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geonet {

/// Runs the command line (`args` excludes the program name) and returns the process
/// exit code: 0 success, 2 input validation, 3 non-convergence, 4 I/O, 1 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geonet
