#include "tickmc/rational.hpp"

#include <cstdlib>
#include <numeric>

namespace tickmc {

namespace {

using I128 = __int128;

constexpr std::int64_t kMax = INT64_MAX;

// Normalizes n/d (d != 0) and returns nullopt when the reduced form does not
// fit in 64 bits.
std::optional<Rational> normalize(I128 n, I128 d) {
  if (d == 0) return std::nullopt;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  I128 a = n < 0 ? -n : n;
  I128 b = d;
  while (b != 0) {
    I128 t = a % b;
    a = b;
    b = t;
  }
  if (a != 0) {
    n /= a;
    d /= a;
  }
  if (n > kMax || n < -static_cast<I128>(kMax) - 1 || d > kMax) return std::nullopt;
  return Rational{static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)};
}

}  // namespace

std::optional<Rational> Rational::make(std::int64_t n, std::int64_t d) {
  return normalize(n, d);
}

std::optional<Rational> Rational::parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  I128 intpart = 0;
  std::size_t i = 0;
  std::size_t digits = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    intpart = intpart * 10 + (text[i] - '0');
    ++i;
    if (++digits > 18) return std::nullopt;
  }
  if (digits == 0) return std::nullopt;
  I128 den = 1;
  I128 num = intpart;
  if (i < text.size() && text[i] == '.') {
    ++i;
    std::size_t fdigits = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      num = num * 10 + (text[i] - '0');
      den *= 10;
      ++i;
      if (++fdigits > 18) return std::nullopt;
    }
    if (fdigits == 0) return std::nullopt;
  }
  if (i != text.size()) return std::nullopt;
  return normalize(num, den);
}

std::string Rational::to_decimal_string() const {
  if (den == 1) return std::to_string(num);
  // Split off factors 2 and 5; anything else has no finite decimal expansion.
  std::int64_t rest = den;
  int twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return std::to_string(num) + "/" + std::to_string(den);
  int k = twos > fives ? twos : fives;
  I128 scale = 1;
  for (int j = 0; j < k; ++j) scale *= 10;
  I128 scaled = static_cast<I128>(num < 0 ? -num : num) * (scale / den);
  I128 ip = scaled;
  std::string frac;
  for (int j = 0; j < k; ++j) {
    frac.push_back(static_cast<char>('0' + static_cast<int>(ip % 10)));
    ip /= 10;
  }
  std::string out = num < 0 ? "-" : "";
  // ip now holds the integer part.
  std::string ipart;
  if (ip == 0) {
    ipart = "0";
  } else {
    while (ip > 0) {
      ipart.push_back(static_cast<char>('0' + static_cast<int>(ip % 10)));
      ip /= 10;
    }
  }
  for (auto it = ipart.rbegin(); it != ipart.rend(); ++it) out.push_back(*it);
  // frac is reversed and may carry trailing zeros (which are leading here).
  std::size_t start = 0;
  while (start < frac.size() && frac[start] == '0') ++start;
  if (start < frac.size()) {
    out.push_back('.');
    for (std::size_t j = frac.size(); j > start; --j) out.push_back(frac[j - 1]);
  }
  return out;
}

std::optional<Rational> r_add(const Rational& a, const Rational& b) {
  return normalize(static_cast<I128>(a.num) * b.den + static_cast<I128>(b.num) * a.den,
                   static_cast<I128>(a.den) * b.den);
}

std::optional<Rational> r_sub(const Rational& a, const Rational& b) {
  return normalize(static_cast<I128>(a.num) * b.den - static_cast<I128>(b.num) * a.den,
                   static_cast<I128>(a.den) * b.den);
}

std::optional<Rational> r_mul(const Rational& a, const Rational& b) {
  return normalize(static_cast<I128>(a.num) * b.num, static_cast<I128>(a.den) * b.den);
}

std::optional<Rational> r_div(const Rational& a, const Rational& b) {
  if (b.num == 0) return std::nullopt;
  return normalize(static_cast<I128>(a.num) * b.den, static_cast<I128>(a.den) * b.num);
}

bool r_less(const Rational& a, const Rational& b) {
  return static_cast<I128>(a.num) * b.den < static_cast<I128>(b.num) * a.den;
}

}  // namespace tickmc
