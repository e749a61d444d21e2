#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace qdisk {

/// Shortest decimal that round-trips to the same double; locale independent.
inline std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (result.ec != std::errc()) return "nan";
  return std::string(buffer, result.ptr);
}

}  // namespace qdisk
