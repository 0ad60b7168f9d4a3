#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "equires/core/error.hpp"

namespace equires {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text form: "a" for integers, "a/b" otherwise.
inline std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str(10);
}

inline std::string to_string(const Integer& z) { return z.get_str(10); }

inline Rational parse_rational(std::string_view text) {
  if (text.empty()) fail(ErrorKind::parse, "empty rational literal");
  std::string s(text);
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && (i == 0 || s[i - 1] == '/'));
    if (!ok) fail(ErrorKind::parse, "malformed rational literal '" + s + "'");
  }
  Rational q;
  if (q.set_str(s, 10) != 0) fail(ErrorKind::parse, "malformed rational literal '" + s + "'");
  if (q.get_den() == 0) fail(ErrorKind::parse, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline Integer parse_integer(std::string_view text) {
  Rational q = parse_rational(text);
  if (q.get_den() != 1) fail(ErrorKind::parse, "expected an integer, got '" + std::string(text) + "'");
  return q.get_num();
}

inline long to_long(const Integer& z) {
  if (!z.fits_slong_p()) fail(ErrorKind::invalid_argument, "integer out of machine range: " + z.get_str());
  return z.get_si();
}

inline Integer lcm_of_denominators(const Rational* begin, const Rational* end) {
  Integer l = 1;
  for (const Rational* p = begin; p != end; ++p) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p->get_den_mpz_t());
  }
  return l;
}

}  // namespace equires
