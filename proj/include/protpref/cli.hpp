#pragma once

#include <iosfwd>

namespace protpref {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitBudget = 3 };

/// Entry point of the `protpref` tool; subcommands extract, rank,
/// aggregate, audit, restrict and synth. Reads stdin through `in` when a
/// path is "-".
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace protpref
