#pragma once

#include <iosfwd>

namespace pwlite {

/// Exit codes of the command-line tool.
enum ExitCode { kExitOk = 0, kExitParseFailure = 1, kExitUsage = 2, kExitUnsupported = 3 };

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace pwlite
