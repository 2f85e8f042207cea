#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chargelimit::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name) and returns its exit
/// code. Everything is written to `out` and `err`; nothing is read from stdin.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chargelimit::cli
