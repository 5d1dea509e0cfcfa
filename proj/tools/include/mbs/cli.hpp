#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mbs::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,   // e.g. not isomorphic, invalid surface, invariant mismatch
  kUsage = 2,      // bad flags, unreadable file, schema error
  kExhausted = 3,  // search budget ran out without a verdict
};

/// Runs the `mbs` command line. `args` excludes the program name. Results go
/// to `out` as one JSON document; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mbs::cli
