#pragma once

#include <iosfwd>

namespace dca::cli {

// Exit codes of the dca command.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kOperationalError = 2;

// Parses argv and runs the selected subcommand (gen, check, falsify).
// Reports go to `out` unless --out names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dca::cli
