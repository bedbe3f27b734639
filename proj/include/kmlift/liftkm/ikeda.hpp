#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmlift/liftkm/plusform.hpp"
#include "kmlift/plocal/siegel.hpp"
#include "kmlift/quadforms/classes.hpp"

namespace kmlift {

// (p^{k-n/2-1/2})^nu F~(beta) with beta + 1/beta = p^{-k+n/2+1/2} c_p, through the
// power sums of the pair (alpha, p^{2k-n-1}/alpha), alpha = p^{k-n/2-1/2} beta
inline Rational satake_symmetric_eval(const Laurent<QuadSurd>& Ft, i64 p, const Rational& c_p, int k, int n, int nu) {
  if (Ft.inverted() != Ft) throw std::domain_error("F~ is not symmetric");
  long kappa = 2L * k - n - 1;
  int top = Ft.max_degree().value_or(0);
  std::vector<Rational> P(top + 1);
  P[0] = 2;
  if (top >= 1) P[1] = c_p;
  Rational e2 = rpow(p, kappa);
  for (int j = 2; j <= top; ++j) P[j] = c_p * P[j - 1] - e2 * P[j - 2];
  QuadSurd v = Ft.coeff(0) * QuadSurd::sqrt_prime_power(p, kappa * nu);
  for (int j = 1; j <= top; ++j) v += Ft.coeff(j) * QuadSurd(P[j]) * QuadSurd::sqrt_prime_power(p, kappa * (nu - j));
  if (!v.is_rational()) throw std::logic_error("symmetric evaluation is not rational: " + v.to_string());
  return v.to_rational();
}

// c_{S(h)}(p) from the T(p^2) action on h
inline Rational shimura_eigenvalue(PlusForm& F, i64 p) {
  auto it = F.hecke.find(p);
  if (it != F.hecke.end()) return it->second;
  auto ev = kohnen_eigenvalue(F.h, F.lambda(), p);
  if (!ev) throw std::domain_error("no T(p^2) eigenvalue at p = " + std::to_string(p) + " within precision");
  F.hecke[p] = *ev;
  return *ev;
}

struct IkedaOptions {
  int dyadic_max_nu = 2;  // nu_2(det G) scope for the dyadic Siegel series
  Budget budget{};
};

struct IkedaCoeff {
  GramMat gram;
  DiscSplit split;
  Rational value = 0;
  bool excluded = false;
  std::string reason;
  std::map<i64, Rational> local;  // p -> (p^{k-n/2-1/2})^nu F~_p(beta_p)
};

inline IkedaCoeff ikeda_coeff(const GramMat& G, PlusForm& F, const IkedaOptions& opt = {}) {
  if (G.n != F.n) throw std::invalid_argument("Gram size differs from the lift degree");
  IkedaCoeff c;
  c.gram = G;
  c.split = disc_split(G);
  i64 ad = c.split.d < 0 ? -c.split.d : c.split.d;
  if (ad >= F.h.precision()) throw std::out_of_range("c_h(|d_T|) beyond the precision of h");
  Rational v = F.coeff(ad);
  for (i64 p : c.split.f > 1 ? nt::prime_divisors(c.split.f) : std::vector<i64>{}) {
    if (p == 2 && nt::valuation(G.det(), 2) > opt.dyadic_max_nu) {
      c.excluded = true;
      c.reason = "nu_2(det 2T) = " + std::to_string(nt::valuation(G.det(), 2)) + " exceeds the dyadic scope " +
                 std::to_string(opt.dyadic_max_nu);
      return c;
    }
    SiegelPoly S = p == 2 ? siegel_series(G, p, SiegelMode::oracle, opt.budget)
                          : siegel_series(G, p, SiegelMode::interpolation, opt.budget);
    if (!S.complete || !S.symmetric) {
      c.excluded = true;
      c.reason = "Siegel series at p = " + std::to_string(p) + " incomplete or asymmetric";
      return c;
    }
    Rational lp = satake_symmetric_eval(S.tilde(), p, shimura_eigenvalue(F, p), F.k, F.n, S.nu_f);
    c.local[p] = lp;
    v *= lp;
  }
  c.value = v;
  return c;
}

struct IkedaCoeffTable {
  int n = 0, k = 0;
  i64 bound = 0;  // det(2T) bound of the class list
  struct Row {
    FormClass cls;
    IkedaCoeff coeff;
  };
  std::vector<Row> rows;
  std::vector<std::string> exclusions;
};

inline IkedaCoeffTable ikeda_table(const ClassList& L, PlusForm& F, const IkedaOptions& opt = {}) {
  IkedaCoeffTable t;
  t.n = F.n;
  t.k = F.k;
  t.bound = L.bound;
  // one evaluation per genus
  std::vector<std::pair<GramMat, IkedaCoeff>> done;
  for (auto& cls : L.classes) {
    IkedaCoeff c;
    bool found = false;
    for (auto& [g, v] : done)
      if (g.det() == cls.gram.det() && same_genus(g, cls.gram)) {
        c = v;
        c.gram = cls.gram;
        found = true;
        break;
      }
    if (!found) {
      c = ikeda_coeff(cls.gram, F, opt);
      done.push_back({cls.gram, c});
    }
    if (c.excluded) t.exclusions.push_back(cls.gram.to_string() + ": " + c.reason);
    t.rows.push_back({cls, c});
  }
  return t;
}

}  // namespace kmlift
