#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rme::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kParse = 3,
  kCompute = 4,
};

/// Runs one command line (args[0] is the program name). Results go to
/// files named by flags or to `out`; failures are reported on `err` as
/// {"error": {"kind": ..., "message": ...}}.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace rme::cli
