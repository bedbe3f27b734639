#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmlift/characters/quadratic.hpp"
#include "kmlift/exactalg/linalg.hpp"
#include "kmlift/lseries/qexp.hpp"

namespace kmlift {

struct PlusForm {
  int k = 0, n = 0;
  QExp h;                        // weight k - n/2 + 1/2
  std::map<i64, Rational> hecke;  // p -> T(p^2) eigenvalue
  bool normalized = true;         // c_h(1) = 1
  std::vector<std::string> notes;

  int lambda() const { return k - n / 2; }
  Rational coeff(i64 e) const { return h[e]; }
};

// Kohnen's T(p^2) on a weight lambda + 1/2 plus form, valid for e with p^2 e < precision
inline Rational kohnen_hecke_coeff(const QExp& f, int lambda, i64 p, i64 e) {
  Rational r = f[p * p * e];
  i64 sgn_e = lambda % 2 ? -e : e;
  r += Rational(kronecker(sgn_e, p)) * rpow(p, lambda - 1) * f[e];
  if (e % (p * p) == 0) r += rpow(p, 2 * lambda - 1) * f[e / (p * p)];
  return r;
}

// T(p^2)-eigenvalue of f, nullopt if f is not an eigenvector on the available range
inline std::optional<Rational> kohnen_eigenvalue(const QExp& f, int lambda, i64 p) {
  i64 top = (f.precision() - 1) / (p * p);
  std::optional<Rational> ev;
  for (i64 e = 1; e <= top; ++e) {
    if (f[e] == 0) continue;
    ev = kohnen_hecke_coeff(f, lambda, p, e) / f[e];
    break;
  }
  if (!ev) return std::nullopt;
  for (i64 e = 0; e <= top; ++e) {
    // at p = 2 the operator is defined on the plus space only
    i64 r = nt::mod(lambda % 2 ? -e : e, 4);
    if (p == 2 && (r == 2 || r == 3)) continue;
    if (kohnen_hecke_coeff(f, lambda, p, e) != *ev * f[e]) return std::nullopt;
  }
  return ev;
}

// cusp plus form of weight k - n/2 + 1/2 on Gamma_0(4) from theta^{w - 4j} F2^j
inline PlusForm build_plus_eigenform(int k, int n, int P, const std::vector<i64>& hecke_primes = {2, 3, 5}) {
  if (k % 2 || n % 2) throw std::invalid_argument("k and n must be even");
  int lambda = k - n / 2;
  if (lambda < 1) throw std::invalid_argument("weight must exceed 1/2");
  int w = 2 * lambda + 1;
  QExp th = theta_series(P), f2 = odd_sigma_series(P);
  std::vector<QExp> basis;
  for (int j = 0; 4 * j <= w; ++j) basis.push_back(th.pow(w - 4 * j) * f2.pow(j));
  int b = static_cast<int>(basis.size());
  // constraints: vanishing constant term and plus-space support
  DenseMat<Rational> M;
  M.push_back({});
  for (int j = 0; j < b; ++j) M.back().push_back(basis[j].c[0]);
  for (int e = 1; e < P; ++e) {
    i64 r = nt::mod(lambda % 2 ? -e : e, 4);
    if (r != 2 && r != 3) continue;
    M.push_back({});
    for (int j = 0; j < b; ++j) M.back().push_back(basis[j].c[e]);
  }
  auto ker = nullspace(M, b);
  if (ker.size() != 1)
    throw std::domain_error("cusp plus space has dimension " + std::to_string(ker.size()) + ", expected 1");
  PlusForm F;
  F.k = k;
  F.n = n;
  F.h = QExp(w, 4, P);
  for (int j = 0; j < b; ++j)
    for (int e = 0; e < P; ++e) F.h.c[e] += ker[0][j] * basis[j].c[e];
  Rational lead = F.h.c[1];
  if (lead == 0) {
    F.normalized = false;
    F.notes.push_back("c_h(1) = 0; normalized at the first nonzero fundamental coefficient");
    for (int e = 2; e < P; ++e)
      if (F.h.c[e] != 0) {
        lead = F.h.c[e];
        break;
      }
  }
  for (auto& x : F.h.c) x /= lead;
  for (i64 p : hecke_primes) {
    auto ev = kohnen_eigenvalue(F.h, lambda, p);
    if (!ev) throw std::domain_error("constructed form is not a T(" + std::to_string(p * p) + ") eigenform");
    F.hecke[p] = *ev;
  }
  return F;
}

}  // namespace kmlift
