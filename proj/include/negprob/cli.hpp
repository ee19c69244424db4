#pragma once

#include <iosfwd>

namespace negprob {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitSignalling = 3;

// Parses argv and runs one subcommand: solve, chsh, inn22, make-box, scan,
// vertices, clone. Results go to `out` (or files named by -o), diagnostics
// to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace negprob
