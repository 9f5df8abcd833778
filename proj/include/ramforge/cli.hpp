#pragma once

#include <iosfwd>

namespace ramforge {

// Exit codes of the command-line front end.
enum ExitCode : int { exit_ok = 0, exit_internal = 1, exit_input = 2, exit_precision = 3 };

// Parses argv, runs one subcommand and writes its JSON (or table) document to
// `out`. Error documents {"error", "reason", ...} also go to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ramforge
