#ifndef GSOB_RATIONAL_HPP
#define GSOB_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gsob {

/// Exact rational scalar used for all polynomial and Hermite coefficient
/// algebra. Floating point enters only when norms are finally evaluated.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// k! as an exact integer.
inline Integer factorial(unsigned long k) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

/// k!! (double factorial), with (-1)!! = 0!! = 1.
inline Integer double_factorial(long k) {
  if (k <= 0) return 1;
  Integer r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Rational rational_pow(const Rational& base, unsigned long e) {
  Rational r = 1;
  Rational b = base;
  unsigned long k = e;
  while (k > 0) {
    if (k & 1UL) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

/// Serialized form: "p" when the denominator is 1, "p/q" otherwise.
inline std::string rational_to_string(const Rational& r) {
  return r.get_str();
}

/// Parses "p", "p/q" or a plain decimal string ("-1.25") into an exact value.
inline Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    Integer num(digits);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace gsob

#endif  // GSOB_RATIONAL_HPP
