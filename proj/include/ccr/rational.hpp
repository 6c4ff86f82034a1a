#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "ccr/error.hpp"

namespace ccr {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// `num` or `num/den`, the textual form used by every file format here.
inline std::string to_string(const Rational& r) {
  if (is_integer(r)) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational parse_rational(std::string_view text) {
  Rational r;
  if (text.empty() || r.set_str(std::string(text), 10) != 0)
    throw InvalidArgument("malformed rational '" + std::string(text) + "'");
  if (r.get_den() == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

inline Integer pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational pow(const Rational& base, long e) {
  Rational b = base;
  if (e < 0) {
    if (b == 0) throw DivisionByZero("0 raised to a negative power");
    b = 1 / b;
    e = -e;
  }
  Rational r(pow(b.get_num(), static_cast<unsigned long>(e)), pow(b.get_den(), static_cast<unsigned long>(e)));
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Exponent of the prime `p` in `n` (n != 0).
inline unsigned long valuation(const Integer& n, unsigned long p) {
  if (n == 0) return 0;
  Integer m = abs(n);
  unsigned long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

}  // namespace ccr
