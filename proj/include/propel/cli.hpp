#pragma once

#include <iosfwd>

namespace propel::cli {

/// Exit statuses of the command-line front end.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Subcommands: matrices, build, verify, series.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace propel::cli
