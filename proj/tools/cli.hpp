#pragma once

#include <iosfwd>

namespace bmx {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFalse = 1,     // verified false, failed suite, or non-certified search
  kExitUsage = 2,     // bad arguments or unparsable input
  kExitCapacity = 3,  // input beyond a search or enumeration bound
};

/// Runs one command; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bmx
