#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hvm::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

/// Parses `args` (without the program name), runs the selected subcommand and
/// writes its report to `out` (or to --out). Returns 0 on pass, 1 when a
/// checked claim fails, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hvm::cli
