#pragma once

#include <stdexcept>
#include <vector>

#include "kmlift/characters/dirichlet.hpp"
#include "kmlift/charsums/counts.hpp"
#include "kmlift/charsums/modmat.hpp"

namespace kmlift {

enum class Variant { printed, corrected };

inline const char* variant_name(Variant v) { return v == Variant::printed ? "printed" : "corrected"; }

// I_{eta,S,c} = sum_{w in F_p^l} eta(S[w] + c)
inline CycloNum quad_char_sum_brute(const DirichletChar& eta, const SymMatModN& S, i64 c) {
  i64 p = S.N;
  auto vecs = detail::all_vectors(S.m, p);
  std::vector<long> hist(p, 0);
  for (auto& w : vecs) hist[nt::mod(detail::bilinear(S, w, w) + c, p)] += 1;
  return char_sum_from_histogram(eta, hist);
}

inline CycloNum quad_char_sum_closed(const DirichletChar& eta, const SymMatModN& S, i64 c) {
  i64 p = S.N;
  if (eta.modulus() != p) throw std::invalid_argument("character modulus must be p");
  int l = S.m;
  auto [r, det0] = rank_det_mod_p(S);
  if (r % 2) {
    if (eta.pow(2).is_trivial()) throw std::domain_error("closed form needs eta^2 != 1 when the rank is odd");
    DirichletChar rho = DirichletChar::jacobi_char(p);
    int s = legendre(((r + 1) / 2) % 2 ? -det0 : det0, p);
    return CycloNum(rpow(p, l - (r + 1) / 2) * s * legendre(c, p)) * jacobi_sum(eta, rho) * eta.value(c);
  }
  if (eta.is_trivial()) throw std::domain_error("closed form needs eta != 1 when the rank is even");
  int s = r == 0 ? 1 : legendre((r / 2) % 2 ? -det0 : det0, p);
  return CycloNum(rpow(p, l - r / 2) * s) * eta.value(c);
}

inline SymMatModN bordered(const SymMatModN& Z1, const std::vector<i64>& w, i64 z) {
  int k = Z1.m;
  SymMatModN Z(k + 1, Z1.N);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) Z.a[i * (k + 1) + j] = Z1.at(i, j);
  for (int i = 0; i < k; ++i) Z.set(i, k, w[i]);
  Z.set(k, k, z);
  return Z;
}

// sum over border vectors w of eta(det [[Z1, w], [w^t, z]])
inline CycloNum bordered_det_sum_brute(const DirichletChar& eta, const SymMatModN& Z1, i64 z) {
  i64 p = Z1.N;
  std::vector<long> hist(p, 0);
  for (auto& w : detail::all_vectors(Z1.m, p)) hist[det_mod_p(bordered(Z1, w, z))] += 1;
  return char_sum_from_histogram(eta, hist);
}

// l = size of the bordered matrix.  For l even the printed sign is
// ((-1)^{l/2} det Z1 / p); the corrected one is ((-1)^{(l-2)/2} det Z1 / p).
inline CycloNum bordered_det_sum_closed(const DirichletChar& eta, const SymMatModN& Z1, i64 z, Variant v) {
  i64 p = Z1.N;
  if (eta.pow(2).is_trivial()) throw std::domain_error("closed form needs eta^2 != 1");
  int l = Z1.m + 1;
  i64 d1 = Z1.m == 0 ? 1 : det_mod_p(Z1);
  CycloNum val = eta.value(nt::mulmod(d1, nt::mod(z, p), p));
  if (l % 2 == 0) {
    int e = v == Variant::printed ? l / 2 : (l - 2) / 2;
    int s = legendre(e % 2 ? -d1 : d1, p) * legendre(z, p);
    DirichletChar rho = DirichletChar::jacobi_char(p);
    return CycloNum(rpow(p, (l - 2) / 2) * s) * jacobi_sum(eta, rho) * val;
  }
  int s = legendre(((l - 1) / 2) % 2 ? -d1 : d1, p);
  return CycloNum(rpow(p, (l - 1) / 2) * s) * val;
}

}  // namespace kmlift
