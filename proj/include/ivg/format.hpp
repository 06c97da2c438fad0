#pragma once

#include <charconv>
#include <cmath>
#include <string>

#include "ivg/error.hpp"

namespace ivg {

/// Shortest-form %g-style rendering with `precision` significant digits,
/// independent of the global locale.
inline std::string format_number(double value, int precision = 9) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general,
                                 precision);
  if (res.ec != std::errc{}) throw DomainError("number formatting failed");
  return std::string(buf, res.ptr);
}

}  // namespace ivg
