#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace normfuzz::cli {

enum ExitCode : int {
  kSuccess = 0,
  kStaticError = 1,   // usage, parse, link, configuration
  kRuntimeError = 2,  // a scenario failed to evaluate
};

/// Entry point of the `normfuzz` tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace normfuzz::cli
