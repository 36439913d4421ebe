#pragma once

// The locind command line: check, verify, graphs, cover, fuzz.
// Exit codes: 0 certified / valid, 1 input error, 2 inconclusive,
// 3 verification failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace locind {

  enum ExitCode : int {
    kExitCertified    = 0,
    kExitInputError   = 1,
    kExitInconclusive = 2,
    kExitVerifyFailed = 3,
  };

  // args excludes the program name.
  int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace locind
