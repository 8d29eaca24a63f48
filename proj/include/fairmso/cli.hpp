#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fairmso::cli {

inline constexpr int kExitAnswered = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitAbsent = 2;

// Custom formulas run at their theoretical alpha/gamma only below these caps.
inline constexpr long long kMaxAutoAlpha = 15;
inline constexpr long long kMaxAutoGamma = 64;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairmso::cli
