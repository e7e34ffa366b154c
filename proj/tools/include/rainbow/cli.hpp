#pragma once

#include <iosfwd>

namespace rainbow::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kStalled = 2;        // solve; verify reports a violation
inline constexpr int kIterationCap = 3;   // solve; oracle hit a cap

/// Entry point behind the `rainbow` binary. Data goes to `out`, diagnostics
/// and logs to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rainbow::cli
