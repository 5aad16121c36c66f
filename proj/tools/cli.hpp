#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qbfs::cli {

/// Exit codes: 0 success, 1 partial or empty result, 2 usage or parse error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qbfs::cli
