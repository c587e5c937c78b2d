#pragma once

namespace bohrlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;

/// Parses the command line, runs one subcommand and returns the exit code.
int run(int argc, char** argv);

}  // namespace bohrlab::cli
