#pragma once

#include <stdexcept>
#include <string>

#include "kmlift/lseries/bernoulli.hpp"
#include "kmlift/lseries/qexp.hpp"
#include "kmlift/quadforms/classes.hpp"

namespace kmlift {

inline int mobius(i64 n) {
  int s = 1;
  for (auto [p, e] : nt::factorize(n)) {
    if (e > 1) return 0;
    s = -s;
  }
  return s;
}

inline Integer sigma_power(i64 n, int k) {
  Integer s = 0;
  for (i64 d : nt::divisors(n)) s += ipow(d, k);
  return s;
}

// L_D(1 - l), l >= 1
inline Rational cohen_L(i64 D, int l) {
  if (l < 1) throw std::invalid_argument("cohen_L needs l >= 1");
  if (D == 0) return -bernoulli_number(2 * l) / (2 * l);
  i64 r = nt::mod(D, 4);
  if (r == 2 || r == 3) return 0;
  DiscSplit s = disc_split_value(D);
  Rational L = -gen_bernoulli_kronecker(s.d, l) / l;
  Rational sum = 0;
  for (i64 a : nt::divisors(s.f)) {
    int mu = mobius(a);
    if (!mu) continue;
    sum += Rational(mu * kronecker(s.d, a)) * Rational(ipow(a, l - 1)) * Rational(sigma_power(s.f / a, 2 * l - 1));
  }
  return L * sum;
}

// printed: H(l,m) = L_{-m}(1-l); plus_space: H(l,m) = L_{(-1)^l m}(1-l)
enum class CohenConvention { printed, plus_space };

inline const char* cohen_convention_name(CohenConvention c) {
  return c == CohenConvention::printed ? "printed" : "plus_space";
}

inline Rational cohen_H(int l, i64 m, CohenConvention conv = CohenConvention::plus_space) {
  i64 D = (conv == CohenConvention::printed || l % 2) ? -m : m;
  return cohen_L(D, l);
}

struct CohenEisenstein {
  QExp series;
  CohenConvention convention = CohenConvention::plus_space;
  std::vector<std::string> notes;
};

// sum_e H(l,e) q^e, weight l + 1/2
inline CohenEisenstein cohen_eisenstein(int l, int P, CohenConvention conv = CohenConvention::plus_space) {
  if (l % 2) throw std::invalid_argument("Cohen Eisenstein series needs even l");
  if (l < 2) throw std::invalid_argument("Cohen Eisenstein series needs l >= 2");
  CohenEisenstein E;
  E.convention = conv;
  if (l < 4) E.notes.push_back("l = " + std::to_string(l) + " is below the l >= 4 range");
  E.series = QExp(2 * l + 1, 4, P);
  for (int e = 0; e < P; ++e) E.series.c[e] = cohen_H(l, e, conv);
  if (!E.series.plus_support_ok()) E.notes.push_back("coefficients violate the plus-space support condition");
  return E;
}

}  // namespace kmlift
