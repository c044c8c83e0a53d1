#pragma once

#include <iosfwd>

namespace jfs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Runs `jfs <subcommand> ...`. Machine-readable output goes to `out`,
/// diagnostics to `err` filtered by JFS_LOG (error, info, debug).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace jfs::cli
