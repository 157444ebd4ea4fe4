// Command-line front end. Exit codes: 0 all checks pass, 1 a check failed,
// 2 usage or parse error.
#pragma once

#include <iosfwd>

namespace qale {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qale
