#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "kmlift/exactalg/rational.hpp"

namespace kmlift::nt {

using i64 = std::int64_t;

inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }
inline i64 lcm(i64 a, i64 b) { return a / std::gcd(a, b) * b; }

inline i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>((static_cast<__int128>(a) * b) % m);
}

inline i64 powmod(i64 b, i64 e, i64 m) {
  i64 r = 1 % m;
  b = mod(b, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline i64 ipow(i64 b, int e) {
  i64 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// inverse of a modulo m, throws if not a unit
inline i64 invmod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    i64 q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw std::domain_error("not invertible");
  return mod(x, m);
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct PrimePower {
  i64 p;
  int e;
};

inline std::vector<PrimePower> factorize(i64 n) {
  if (n <= 0) throw std::invalid_argument("factorize needs a positive integer");
  std::vector<PrimePower> out;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline std::vector<i64> prime_divisors(i64 n) {
  std::vector<i64> out;
  for (auto [p, e] : factorize(n)) out.push_back(p);
  return out;
}

inline std::vector<i64> divisors(i64 n) {
  std::vector<i64> out;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d * d != n) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline i64 euler_phi(i64 n) {
  i64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

inline bool is_squarefree(i64 n) {
  for (auto [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

inline int valuation(i64 n, i64 p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline int valuation(const Integer& n, long p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  Integer m = n;
  int v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

inline int valuation(const Rational& r, long p) {
  return valuation(r.get_num(), p) - valuation(r.get_den(), p);
}

inline i64 multiplicative_order(i64 a, i64 m) {
  if (gcd(a, m) != 1) throw std::domain_error("order of a non-unit");
  i64 x = mod(a, m), k = 1;
  while (x != 1 % m) {
    x = mulmod(x, a, m);
    ++k;
  }
  return k;
}

// smallest generator of (Z/p^e)^x, p odd
inline i64 primitive_root(i64 p, int e) {
  i64 q = ipow(p, e);
  i64 ph = euler_phi(q);
  auto ps = prime_divisors(ph);
  for (i64 g = 2; g < q; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (i64 r : ps)
      if (powmod(g, ph / r, q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  if (q == 2) return 1;
  throw std::domain_error("no primitive root");
}

// x = a mod m, x = b mod n with gcd(m,n)=1
inline i64 crt(i64 a, i64 m, i64 b, i64 n) {
  i64 t = mulmod(mod(b - a, n), invmod(m, n), n);
  return mod(a + m * t, m * n);
}

// Reduce a rational with denominator prime to m into Z/m.
inline i64 reduce_mod(const Rational& r, i64 m) {
  Integer num = r.get_num() % m, den = r.get_den() % m;
  i64 a = mod(num.get_si(), m), d = mod(den.get_si(), m);
  return mulmod(a, invmod(d, m), m);
}

inline i64 isqrt(i64 n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool is_square(i64 n) { return n >= 0 && isqrt(n) * isqrt(n) == n; }

// squarefree part, keeps the sign
inline i64 squarefree_part(i64 n) {
  if (n == 0) throw std::domain_error("squarefree part of zero");
  i64 s = n < 0 ? -1 : 1;
  for (auto [p, e] : factorize(n < 0 ? -n : n))
    if (e % 2) s *= p;
  return s;
}

}  // namespace kmlift::nt
