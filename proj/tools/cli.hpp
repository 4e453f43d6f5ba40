#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lqg::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode { kExitOk = 0, kExitFail = 1, kExitInput = 2 };

/// Runs the command line `args` (without the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace lqg::cli
