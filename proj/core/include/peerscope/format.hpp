#pragma once

#include <charconv>
#include <string>

namespace peerscope {

/// Locale-independent fixed-point rendering. Every table the toolkit writes
/// goes through this so reruns are byte-identical.
inline std::string format_fixed(double value, int precision = 6) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, precision);
  std::string out(buf, res.ptr);
  if (out.starts_with('-') && out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);  // no "-0.000000"
  }
  return out;
}

/// Shortest representation that round-trips exactly.
inline std::string format_exact(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace peerscope
