#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace berry {

inline constexpr int kExitOk = 0;
inline constexpr int kExitToleranceBreach = 1;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitNonConvergence = 3;

/// Entry point of the berry_holonomy tool. `args` excludes the program name.
/// Output files go to --out, otherwise to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace berry
