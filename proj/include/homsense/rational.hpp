#pragma once

// Arbitrary-precision rationals backed by GMP.
//
// mpq_class keeps values canonical as long as every constructor that takes a
// raw numerator/denominator pair is followed by canonicalize(); the helpers
// below are the only entry points that build values from text or pairs.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace homsense {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p", "p/q" (q != 0). Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string_view s) {
    return (!s.empty() && s[0] == '+') ? std::string(s.substr(1)) : std::string(s);
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || (slash != std::string_view::npos && den[0] == '-'))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  Integer n(strip_plus(num), 10);
  Integer d(strip_plus(den), 10);
  if (d == 0) throw std::domain_error("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r{Integer(num), Integer(den)};
  r.canonicalize();
  return r;
}

}  // namespace homsense
