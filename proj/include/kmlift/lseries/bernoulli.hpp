#pragma once

#include <stdexcept>
#include <vector>

#include "kmlift/characters/dirichlet.hpp"
#include "kmlift/characters/quadratic.hpp"
#include "kmlift/exactalg/cyclo.hpp"
#include "kmlift/exactalg/poly.hpp"
#include "kmlift/exactalg/rational.hpp"

namespace kmlift {

inline Integer binomial(long n, long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline Integer factorial(long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

// B_0..B_k with B_1 = -1/2
inline std::vector<Rational> bernoulli_numbers(int k) {
  std::vector<Rational> B(k + 1);
  B[0] = 1;
  for (int m = 1; m <= k; ++m) {
    Rational s = 0;
    for (int j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * B[j];
    B[m] = -s / (m + 1);
  }
  return B;
}

inline Rational bernoulli_number(int k) { return bernoulli_numbers(k)[k]; }

inline RatPoly bernoulli_poly(int k) {
  auto B = bernoulli_numbers(k);
  std::vector<Rational> c(k + 1);
  for (int j = 0; j <= k; ++j) c[k - j] = Rational(binomial(k, j)) * B[j];
  return RatPoly(std::move(c));
}

// N^{k-1} sum_{a=1}^{N} chi(a) B_k(a/N) over the modulus N of chi as given
inline CycloNum gen_bernoulli_at_modulus(const DirichletChar& chi, int k) {
  if (k < 1) throw std::invalid_argument("Bernoulli index must be positive");
  i64 N = chi.modulus();
  RatPoly Bk = bernoulli_poly(k);
  std::vector<Rational> raw(chi.order(), Rational(0));
  for (i64 a = 1; a <= N; ++a) {
    int e = chi.exponent(a);
    if (e < 0) continue;
    raw[e] += Bk.eval(rat(a, N));
  }
  for (auto& x : raw) x *= rpow(N, k - 1);
  return CycloNum(chi.order(), std::move(raw));
}

// B_{k,chi} for the primitive character attached to chi
inline CycloNum gen_bernoulli(const DirichletChar& chi, int k) {
  return gen_bernoulli_at_modulus(chi.primitive(), k);
}

// L(1-k, chi) = -B_{k,chi}/k
inline CycloNum dirichlet_L_at_negative(const DirichletChar& chi, int k) {
  return gen_bernoulli(chi, k) * CycloNum(rat(-1, k));
}

// B_{k,chi_d} for the Kronecker character of a fundamental discriminant d (d = 1 trivial)
inline Rational gen_bernoulli_kronecker(long d, int k) {
  if (d == 1) return k == 1 ? rat(1, 2) : bernoulli_number(k);
  return gen_bernoulli(DirichletChar::kronecker_char(d), k).to_rational();
}

}  // namespace kmlift
