// Exact rational numbers for probability literals and constant bindings.
//
// Arithmetic is exact while numerator and denominator fit in 64 bits;
// operations report overflow by returning nullopt so callers can fall back to
// IEEE doubles (the documented tolerance for derived quantities is 1e-9).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tickmc {

struct Rational {
  // Invariant: den > 0 and gcd(|num|, den) == 1.
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of_int(std::int64_t n) { return Rational{n, 1}; }

  // Builds a normalized rational; d must be nonzero.
  static std::optional<Rational> make(std::int64_t n, std::int64_t d);

  // Parses "123" or "123.456" (no sign, no exponent).  Returns nullopt when
  // the text is malformed or the value does not fit.
  static std::optional<Rational> parse_decimal(std::string_view text);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const { return den == 1; }
  bool is_zero() const { return num == 0; }

  // Exact decimal rendering when den has only factors 2 and 5 (always the
  // case for parsed literals); falls back to "num/den" otherwise.
  std::string to_decimal_string() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

// Exact arithmetic; nullopt on 64-bit overflow.  r_div of a zero denominator
// also yields nullopt — callers that care distinguish via is_zero() first.
std::optional<Rational> r_add(const Rational& a, const Rational& b);
std::optional<Rational> r_sub(const Rational& a, const Rational& b);
std::optional<Rational> r_mul(const Rational& a, const Rational& b);
std::optional<Rational> r_div(const Rational& a, const Rational& b);

// a < b, exact.
bool r_less(const Rational& a, const Rational& b);

}  // namespace tickmc
