#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace m2ma::cli {

// Exit codes (sysexits-style where one fits).
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 2;
inline constexpr int kUsage = 64;
inline constexpr int kNoInput = 66;
inline constexpr int kCantCreate = 73;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace m2ma::cli
