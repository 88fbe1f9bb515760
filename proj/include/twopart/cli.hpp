#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twopart::cli {

inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitError = 2;

/// `args` excludes the program name.  For fuzz, exit 1 means a mismatch was found.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twopart::cli
