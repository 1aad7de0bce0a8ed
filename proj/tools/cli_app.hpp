#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maxtree::cli {

enum ExitCode : int {
  kOk = 0,
  kDomainError = 1,  // reducible input, mu > 1, non-SR, failed verification
  kInputError = 2,   // unreadable file, malformed matrix, bad usage
  kInternalError = 3,
};

/// Runs the command line `args` (args[0] is the program name), writing the
/// report to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxtree::cli
