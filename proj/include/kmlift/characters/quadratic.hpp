#pragma once

#include <stdexcept>

#include "kmlift/exactalg/numtheory.hpp"
#include "kmlift/exactalg/rational.hpp"

namespace kmlift {

using nt::i64;

// Legendre symbol (a/p), p an odd prime.
inline int legendre(i64 a, i64 p) {
  a = nt::mod(a, p);
  if (a == 0) return 0;
  return nt::powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Jacobi symbol (a/n), n odd positive.
inline int jacobi_symbol(i64 a, i64 n) {
  if (n <= 0 || n % 2 == 0) throw std::domain_error("jacobi symbol needs odd positive n");
  a = nt::mod(a, n);
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

// Kronecker symbol (a/n) for any integers.
inline int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int t = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) t = -t;
  }
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    i64 r = nt::mod(a, 8);
    if (r == 3 || r == 5) t = -t;
  }
  if (n == 1) return t;
  return t * jacobi_symbol(a, n);
}

inline int kronecker(const Integer& a, i64 n) {
  if (a.fits_slong_p()) return kronecker(a.get_si(), n);
  if (n == 0) return 0;
  i64 m = n < 0 ? -n : n;
  Integer r = a % Integer(8 * m);
  int t = kronecker(nt::mod(r.get_si(), 8 * m), m);
  return (n < 0 && a < 0) ? -t : t;
}

// Legendre symbol of a p-adic unit given as a rational with p-prime numerator and denominator
inline int legendre(const Rational& u, i64 p) {
  return legendre(nt::reduce_mod(u, p), p);
}

inline constexpr i64 kInfinitePlace = 0;

// Hilbert symbol (a,b)_p over Q_p, p prime, or p = kInfinitePlace for R.
inline int hilbert_symbol(const Rational& a, const Rational& b, i64 p) {
  if (a == 0 || b == 0) throw std::domain_error("hilbert symbol of zero");
  if (p == kInfinitePlace) return (a < 0 && b < 0) ? -1 : 1;
  int alpha = nt::valuation(a, p), beta = nt::valuation(b, p);
  Rational u = a / rpow(p, alpha), v = b / rpow(p, beta);
  if (p != 2) {
    int s = ((alpha * beta) % 2 != 0 && (p - 1) / 2 % 2 != 0) ? -1 : 1;
    if (beta % 2 != 0) s *= legendre(u, p);
    if (alpha % 2 != 0) s *= legendre(v, p);
    return s;
  }
  i64 u8 = nt::reduce_mod(u, 8), v8 = nt::reduce_mod(v, 8);
  auto eps = [](i64 x) { return ((x - 1) / 2) % 2; };
  auto omega = [](i64 x) { return ((x * x - 1) / 8) % 2; };
  i64 e = eps(u8) * eps(v8) + alpha * omega(v8) + beta * omega(u8);
  return e % 2 ? -1 : 1;
}

}  // namespace kmlift
