#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kmlift {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r{Integer(num), Integer(den)};
  r.canonicalize();
  return r;
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Integer ipow(long base, unsigned long e) { return ipow(Integer(base), e); }

inline Rational rpow(const Rational& base, long e) {
  if (e >= 0) {
    Rational r{ipow(base.get_num(), e), ipow(base.get_den(), e)};
    r.canonicalize();
    return r;
  }
  if (base == 0) throw std::domain_error("zero to a negative power");
  Rational r{ipow(base.get_den(), -e), ipow(base.get_num(), -e)};
  r.canonicalize();
  return r;
}

inline Rational rpow(long base, long e) { return rpow(rat(base), e); }

// "num/den" always, including integers.
inline std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (r.get_den() == 0) throw std::domain_error("rational with zero denominator");
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
  return z.get_si();
}

}  // namespace kmlift
