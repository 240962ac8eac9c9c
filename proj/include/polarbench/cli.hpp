#pragma once
// The polarbench command line: gen, validate, eval, report, serve, baseline.

#include <ostream>
#include <string>
#include <vector>

namespace polarbench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polarbench
