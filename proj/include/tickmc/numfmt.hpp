// Deterministic double formatting helpers (charconv-based, locale-free).
#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace tickmc {

// Shortest decimal text that parses back to exactly the same double
// (e.g. 0.091, 1e-06).  Used wherever results must be byte-identical across
// runs and thread counts.
inline std::string format_shortest(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

// Fixed-point with `digits` fractional digits (for human-oriented renderings
// such as DOT edge labels).
inline std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return std::string(buf);
}

}  // namespace tickmc
