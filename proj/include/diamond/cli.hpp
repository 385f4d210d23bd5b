#pragma once

#include <iosfwd>

namespace diamond {

/// Exit codes of the command-line tool.
enum ExitStatus : int { kExitOk = 0, kExitUsage = 1, kExitComputation = 2 };

/// Entry point of the `diamond` tool, parameterized on the output streams so it
/// can be driven from tests. Subcommands: sweep, steady, evolve, dressed, presets.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace diamond
