#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace codeprov {

inline constexpr const char* kToolName = "codeprov";

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitInternal = 3 };

/// Entry point behind the codeprov executable. Data goes to files or `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace codeprov
