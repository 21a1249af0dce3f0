#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace islandsim::detail {

// Shortest round-trip text for a double; "-0" prints as "0".
inline std::string num(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

// Fixed decimals, for report columns.
inline std::string fixed(double v, int decimals) {
  if (std::abs(v) < 0.5 * std::pow(10.0, -decimals)) v = 0.0;
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

}  // namespace islandsim::detail
