#pragma once

#include <charconv>
#include <string>

namespace m2ma {

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

}  // namespace m2ma
