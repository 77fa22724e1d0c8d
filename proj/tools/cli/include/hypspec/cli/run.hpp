#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hypspec::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,       // bad flags, bad config, domain errors
  kNotConverged = 2,  // results printed but flagged
};

/// Entry point of the `hypspec` tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

}  // namespace hypspec::cli
