#pragma once

// Exact rational scalar used by the exponent calculus so that breakpoint
// membership tests (q exactly on a regime boundary) never flap.  Inputs
// arriving as decimal strings ("1.35") are parsed exactly; everything else
// falls back to double arithmetic with a fixed boundary tolerance.

#include <boost/rational.hpp>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace splb {

using ExactQ = boost::rational<long long>;

inline double to_dbl(const ExactQ& x) { return boost::rational_cast<double>(x); }
inline double to_dbl(double x) { return x; }

// Parses a plain decimal literal (optional sign, digits, optional fraction).
// Rejects exponents and anything that would overflow the int64 backing.
inline std::optional<ExactQ> parse_decimal_rational(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') {
    neg = (s[i] == '-');
    ++i;
  }
  long long num = 0;
  long long den = 1;
  bool any_digit = false;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
    if (num > 1000000000000LL) return std::nullopt;
    num = num * 10 + (s[i] - '0');
    any_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
      if (den > 100000000000LL) return std::nullopt;
      num = num * 10 + (s[i] - '0');
      den *= 10;
      any_digit = true;
    }
  }
  if (!any_digit || i != s.size()) return std::nullopt;
  return ExactQ(neg ? -num : num, den);
}

// Nearest small-denominator rational; succeeds only when x is reproduced
// exactly by the candidate (covers doubles that came from decimal literals).
inline std::optional<ExactQ> approx_rational(double x, long long max_den = 1000000000LL) {
  if (!std::isfinite(x)) return std::nullopt;
  if (std::abs(x) > 1e12) return std::nullopt;
  // continued fraction expansion
  double v = x;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(v);
    if (fl > 9.2e18 || fl < -9.2e18) return std::nullopt;
    long long a = static_cast<long long>(fl);
    long long p2 = a * p1 + p0;
    long long q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (to_dbl(ExactQ(p1, q1)) == x) return ExactQ(p1, q1);
    double frac = v - fl;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace splb
