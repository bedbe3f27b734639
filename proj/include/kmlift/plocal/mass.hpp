#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "kmlift/lseries/bernoulli.hpp"
#include "kmlift/plocal/density.hpp"
#include "kmlift/quadforms/classes.hpp"

namespace kmlift {

namespace detail {

// rational part of Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s)
inline Rational gamma_c_rational(int s) { return Rational(factorial(s - 1)) * rpow(2, 1 - s); }

// zeta(2j) / pi^{2j}
inline Rational zeta_even_rational(int j) {
  Rational z = bernoulli_number(2 * j) * rpow(2, 2 * j - 1) / Rational(factorial(2 * j));
  return j % 2 ? z : -z;
}

// L(k, chi_d) * |d|^{1/2} / pi^k for k = 1 mod 2 iff d < 0
inline Rational l_value_rational(long d, int k) {
  int a = d < 0 ? 1 : 0;
  if ((k - a) % 2) throw std::invalid_argument("parity of k and d do not match");
  long ad = d < 0 ? -d : d;
  Rational v = rpow(2, k - 1) * rpow(ad, -k) * gen_bernoulli_kronecker(d, k) / Rational(factorial(k));
  return ((1 + (k - a) / 2) % 2) ? -v : v;
}

}  // namespace detail

// overall 2-power fitted against class sums of 1/e(T) for all genera with
// n = 2, det <= 60 and n = 4, det <= 30
inline constexpr int kMassTwoPower = 1;

struct MassTerms {
  Rational raw;    // kappa_n 2^{-n/2} det^{(n+1)/2} prod_p alpha_p^{-1}
  Rational value;  // 2^kMassTwoPower * raw
  DiscSplit split;
  std::vector<i64> bad_primes;
  std::vector<Rational> densities;  // alpha_p at the bad primes
};

// even n; alpha_2 by brute force, alpha_p closed for odd p
inline MassTerms siegel_mass(const GramMat& G, const Budget& budget = {}) {
  if (G.n % 2) throw std::invalid_argument("mass formula needs even size");
  int k = G.n / 2;
  MassTerms t;
  t.split = disc_split(G);
  long d = t.split.d;
  i64 det = to_long(G.det());
  t.bad_primes = nt::prime_divisors(2 * det);
  Rational kappa = detail::gamma_c_rational(k);
  for (int i = 1; i < k; ++i) kappa *= detail::gamma_c_rational(2 * i);
  Rational v = kappa * rpow(2, -k) * rpow(det, k) * t.split.f * (d < 0 ? -d : d);
  v *= detail::l_value_rational(d, k);
  for (int i = 1; i < k; ++i) v *= detail::zeta_even_rational(i);
  for (i64 p : t.bad_primes) {
    Rational std_p = 1 - kronecker(d, p) * rpow(p, -k);
    for (int i = 1; i < k; ++i) std_p *= 1 - rpow(p, -2 * i);
    Rational a = p == 2 ? local_density_brute(G, p, budget).value : local_density_closed(G, p);
    t.densities.push_back(a);
    v *= std_p / a;
  }
  t.raw = v;
  t.value = v * rpow(2, kMassTwoPower);
  return t;
}

inline Rational mass_formula(const GramMat& G, const Budget& budget = {}) { return siegel_mass(G, budget).value; }

// e with class_mass = 2^e * raw, nullopt when the ratio is not a power of 2
inline std::optional<int> fit_mass_two_power(const Rational& class_mass, const Rational& raw) {
  Rational r = class_mass / raw;
  if (r <= 0) return std::nullopt;
  Integer num = r.get_num(), den = r.get_den();
  if (mpz_popcount(num.get_mpz_t()) != 1 || mpz_popcount(den.get_mpz_t()) != 1) return std::nullopt;
  return static_cast<int>(mpz_sizeinbase(num.get_mpz_t(), 2)) - static_cast<int>(mpz_sizeinbase(den.get_mpz_t(), 2));
}

}  // namespace kmlift
