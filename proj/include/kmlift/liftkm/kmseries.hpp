#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmlift/charsums/hsum.hpp"
#include "kmlift/exactalg/linalg.hpp"
#include "kmlift/liftkm/ikeda.hpp"
#include "kmlift/lseries/cohen.hpp"
#include "kmlift/lseries/dirstream.hpp"

namespace kmlift {

enum class KMKind { first, second };

inline const char* km_kind_name(KMKind k) { return k == KMKind::first ? "first" : "second"; }

// Koecher-Maass coefficients indexed by D = det(2T)
struct KMStream {
  KMKind kind = KMKind::second;
  std::string chi;
  i64 bound = 0;
  std::map<i64, CycloNum> coeff;
  std::set<i64> excluded;  // indices carrying an excluded class

  CycloNum at(i64 D) const {
    auto it = coeff.find(D);
    return it == coeff.end() ? CycloNum(0) : it->second;
  }
  bool is_zero() const {
    for (const auto& [D, v] : coeff)
      if (!v.is_zero()) return false;
    return true;
  }
};

namespace detail {
inline void require_complete(const IkedaCoeffTable& T, i64 B) {
  if (T.bound < B)
    throw std::invalid_argument("class list is complete to det(2T) <= " + std::to_string(T.bound) +
                                ", stream bound is " + std::to_string(B));
}
}  // namespace detail

// chi(2^{2[n/2]} det T) c(T) / e(T)
inline KMStream km_stream_second(const IkedaCoeffTable& T, const DirichletChar& chi, i64 B) {
  detail::require_complete(T, B);
  KMStream s;
  s.kind = KMKind::second;
  s.chi = chi.descriptor();
  s.bound = B;
  for (const auto& r : T.rows) {
    i64 D = to_long(r.cls.gram.det());
    if (D > B) continue;
    if (r.coeff.excluded) {
      s.excluded.insert(D);
      continue;
    }
    i64 m = T.n % 2 ? D / 2 : D;
    s.coeff[D] += chi.value(m) * CycloNum(r.coeff.value / Rational(r.cls.e));
  }
  return s;
}

struct FirstKindOptions {
  HsumMode mode = HsumMode::brute_sym;
  HsumOptions closed{};
  Budget budget{};
};

// c(T) h(T, chi) / e(T), h on T = G/2 mod N
inline KMStream km_stream_first(const IkedaCoeffTable& T, const DirichletChar& chi, i64 B, Det1TableCache& cache,
                                const FirstKindOptions& opt = {}) {
  detail::require_complete(T, B);
  i64 N = chi.modulus();
  if (N < 3 || N % 2 == 0) throw std::domain_error("first kind needs an odd modulus N >= 3");
  KMStream s;
  s.kind = KMKind::first;
  s.chi = chi.descriptor();
  s.bound = B;
  for (const auto& r : T.rows) {
    i64 D = to_long(r.cls.gram.det());
    if (D > B) continue;
    if (r.coeff.excluded) {
      s.excluded.insert(D);
      continue;
    }
    SymMatModN A = halfintegral_mod(r.cls.gram.g, T.n, N);
    CycloNum h;
    switch (opt.mode) {
      case HsumMode::brute_sl: h = h_sum_brute_sl(A, chi, opt.budget); break;
      case HsumMode::brute_sym: h = h_sum_brute_sym(A, chi, cache); break;
      case HsumMode::closed: h = h_sum_closed(A, chi, opt.closed); break;
    }
    s.coeff[D] += h * CycloNum(r.coeff.value / Rational(r.cls.e));
  }
  return s;
}

struct FitResidual {
  i64 index = 0;
  CycloNum lhs, rhs;
};

struct TwoTermFit {
  bool solved = false;
  Rational c = 0, d = 0;
  std::vector<i64> fit_indices;
  std::vector<i64> checked;
  std::vector<FitResidual> residuals;
};

using IndexFn = std::function<CycloNum(i64)>;

namespace detail {
inline std::vector<Rational> coords(const CycloNum& x, int L) { return x.at_level(L).coeffs(); }
}  // namespace detail

// lhs = c x1 + d x2 with rational c, d: solved on leading indices, checked on all
inline TwoTermFit fit_two_term(const IndexFn& lhs, const IndexFn& x1, const IndexFn& x2,
                               const std::vector<i64>& indices) {
  TwoTermFit f;
  DenseMat<Rational> M;
  std::vector<Rational> b;
  for (i64 D : indices) {
    CycloNum l = lhs(D), a = x1(D), c = x2(D);
    int L = static_cast<int>(nt::lcm(nt::lcm(l.level(), a.level()), c.level()));
    auto lv = detail::coords(l, L), av = detail::coords(a, L), cv = detail::coords(c, L);
    std::size_t rows = M.size();
    for (std::size_t j = 0; j < lv.size(); ++j) {
      if (lv[j] == 0 && av[j] == 0 && cv[j] == 0) continue;
      M.push_back({av[j], cv[j]});
      b.push_back(lv[j]);
    }
    if (M.size() == rows) continue;
    DenseMat<Rational> R = M;
    bool full = rref(R).size() == 2;
    auto x = solve_unique(M, b);
    if (full && !x) {
      // inconsistent pair: drop this index and try the next one
      M.resize(rows);
      b.resize(rows);
      continue;
    }
    f.fit_indices.push_back(D);
    if (x) {
      f.solved = true;
      f.c = (*x)[0];
      f.d = (*x)[1];
      break;
    }
  }
  f.checked = indices;
  if (!f.solved) return f;
  for (i64 D : indices) {
    CycloNum l = lhs(D);
    CycloNum r = CycloNum(f.c) * x1(D) + CycloNum(f.d) * x2(D);
    if (l != r) f.residuals.push_back({D, l, r});
  }
  return f;
}

// D <= B with nu_2(D) <= max_nu2, excluded indices removed
inline std::vector<i64> scope_indices(i64 B, int max_nu2, const std::set<i64>& excluded) {
  std::vector<i64> out;
  for (i64 D = 1; D <= B; ++D)
    if (nt::valuation(D, 2) <= max_nu2 && !excluded.count(D)) out.push_back(D);
  return out;
}

// S(h) from the Shimura eigenvalues; only weight 12 (Delta) is available
inline QExp shimura_image(const PlusForm& F, int P) {
  if (2 * F.k - F.n != 12) throw std::domain_error("S(h) is only available for weight 2k - n = 12");
  QExp S = delta_series(P);
  for (const auto& [p, ev] : F.hecke)
    if (p < P && S.c[p] != ev)
      throw std::logic_error("T(" + std::to_string(p * p) + ") eigenvalue differs from the weight 12 eigenform");
  return S;
}

// c_n R(s,h,E,psi) prod L(2s-2j,S(h),psi^2) and c_h(1) prod L(2s-2j+1,S(h),psi^2)
struct LiftStreams {
  DirStream x1, x2;
};

inline LiftStreams lift_streams(const PlusForm& F, const QExp& E, const QExp& S, const DirichletChar& psi, i64 B) {
  int n = F.n;
  std::vector<int> even, odd;
  for (int j = 1; j <= n / 2 - 1; ++j) even.push_back(2 * j);
  for (int j = 1; j <= n / 2; ++j) odd.push_back(2 * j - 1);
  DirichletChar psi2 = psi.pow(2);
  LiftStreams r;
  r.x1 = rankin_stream(F.h, E, psi, F.lambda(), n / 2, B, RankinVariant::R) * shifted_L_stream(S, psi2, even, B);
  r.x2 = CycloNum(F.coeff(1)) * shifted_L_stream(S, psi2, odd, B);
  return r;
}

struct LiftIdentityOptions {
  i64 bound = 40;
  int max_nu2 = 2;
  std::vector<int> shifts = {0, -1, 1, -2, 2, -3, 3, -4, 4};
};

struct ShiftTrial {
  int shift = 0;
  std::string outcome;
};

struct LiftIdentityReport {
  int n = 0, k = 0;
  std::string chi;
  i64 bound = 0;
  int max_nu2 = 2;
  bool shift_found = false;
  int shift = 0;  // LHS index D against RHS index 2^shift D
  std::vector<ShiftTrial> trials;
  TwoTermFit fit;
  std::vector<i64> excluded;
  std::vector<std::string> exclusions;
  std::vector<std::string> notes;

  bool pass() const { return shift_found && fit.solved && fit.residuals.empty(); }
};

namespace detail {
inline CycloNum shifted_at(const DirStream& s, i64 D, int a) {
  if (a >= 0) return s[D << a];
  i64 q = i64(1) << (-a);
  return D % q ? CycloNum(0) : s[D / q];
}

inline std::string fit_outcome(const TwoTermFit& f) {
  if (!f.solved) return "degenerate or inconsistent system";
  if (f.residuals.empty()) return "empty residuals";
  return std::to_string(f.residuals.size()) + " residuals";
}
}  // namespace detail

// L*(s, I_n(h), chi) against c_n X1 + d_n X2 in det(2T) indexing
inline LiftIdentityReport verify_lift_identity(const IkedaCoeffTable& T, const PlusForm& F, const DirichletChar& chi,
                                const LiftIdentityOptions& opt = {}) {
  if (T.n != F.n || T.k != F.k) throw std::invalid_argument("coefficient table and plus form disagree on (n, k)");
  if (chi.conductor() % 2 == 0) throw std::domain_error("character conductor must be odd");
  LiftIdentityReport r;
  r.n = F.n;
  r.k = F.k;
  r.chi = chi.descriptor();
  r.bound = opt.bound;
  r.max_nu2 = opt.max_nu2;
  r.exclusions = T.exclusions;
  KMStream L = km_stream_second(T, chi, opt.bound);
  r.excluded.assign(L.excluded.begin(), L.excluded.end());
  auto idx = scope_indices(opt.bound, opt.max_nu2, L.excluded);
  int P = F.h.precision();
  QExp E = cohen_eisenstein(F.n / 2, P).series;
  QExp S = shimura_image(F, P);
  int top = 0;
  for (int a : opt.shifts) top = std::max(top, a);
  i64 need = opt.bound;
  while (top > 0 && (opt.bound << top) >= P) --top;
  need = opt.bound << top;
  LiftStreams X = lift_streams(F, E, S, chi, need);
  std::optional<TwoTermFit> first;
  for (int a : opt.shifts) {
    if (a > top) {
      r.trials.push_back({a, "skipped: needs precision above " + std::to_string(opt.bound << a)});
      continue;
    }
    TwoTermFit f = fit_two_term([&](i64 D) { return L.at(D); },
                                [&](i64 D) { return detail::shifted_at(X.x1, D, a); },
                                [&](i64 D) { return detail::shifted_at(X.x2, D, a); }, idx);
    r.trials.push_back({a, detail::fit_outcome(f)});
    if (!first) first = f;
    if (f.solved && f.residuals.empty()) {
      r.shift_found = true;
      r.shift = a;
      r.fit = f;
      break;
    }
  }
  if (!r.shift_found && first) r.fit = *first;
  r.notes.push_back("scope: D = det(2T) <= " + std::to_string(opt.bound) + ", nu_2(D) <= " +
                    std::to_string(opt.max_nu2) + ", indices with excluded classes dropped");
  if (r.shift_found)
    r.notes.push_back("normalization: 2^{" + std::to_string(r.shift) + "s} in det(2T) indexing, 2^{" +
                      std::to_string(r.shift + F.n) + "s} in det T indexing; constant part absorbed into c_n, d_n");
  if (!F.normalized) r.notes.push_back("h is not normalized at c_h(1)");
  return r;
}

// Jacobi weights of the finite first-kind combination
enum class JacobiWeights { printed, corrected };

inline const char* jacobi_weights_name(JacobiWeights w) { return w == JacobiWeights::printed ? "printed" : "corrected"; }

struct FirstKindPlan {
  i64 N = 1;
  int n = 0;
  bool zero_branch = false;
  std::vector<i64> failing_primes;
  std::optional<DirichletChar> chi_tilde;
  std::vector<DirichletChar> psi;  // chi~ eta, eta^n = 1
};

inline FirstKindPlan first_kind_plan(const DirichletChar& chi, int n) {
  FirstKindPlan p;
  p.N = chi.modulus();
  p.n = n;
  if (n % 2) throw std::domain_error("lift degree must be even");
  if (!chi.is_primitive()) throw std::domain_error("character must be primitive");
  for (auto [q, e] : nt::factorize(p.N)) {
    if (e > 1 || q == 2) throw std::domain_error("modulus must be odd squarefree");
    i64 l = nt::gcd(n, q - 1);
    i64 u = find_primitive_root_of_unity_mod(q, l);
    if (chi.local_component(q).exponent(u) != 0) p.failing_primes.push_back(q);
  }
  p.zero_branch = !p.failing_primes.empty();
  if (p.zero_branch) return p;
  p.chi_tilde = detail::mth_root(chi, n);
  if (!p.chi_tilde) throw std::domain_error("no character chi~ with chi~^n = chi");
  for (const auto& eta : CharGroup(p.N).subgroup_Dm(n)) p.psi.push_back(*p.chi_tilde * eta);
  return p;
}

// weight of L*(s, F, psi) without the global constant
inline CycloNum first_kind_weight(const DirichletChar& psi, int n, JacobiWeights w) {
  i64 N = psi.modulus();
  DirichletChar rho = DirichletChar::jacobi_char(N);
  DirichletChar pb = psi.conj();
  CycloNum v = pb.value(nt::powmod(2, n, N));
  if (w == JacobiWeights::printed)
    v *= jacobi_sum(psi, rho).conj() * Jm_chi(psi, n - 1).conj();
  else
    v *= jacobi_sum(pb * rho, rho) * Jm_chi(pb, n - 1);
  return v;
}

inline Rational first_kind_constant(i64 N, int n, JacobiWeights w, GammaMode g) {
  Rational c = 1;
  for (auto [p, e] : nt::factorize(N)) {
    c *= gamma_const(n, p, g) * detail::minus_one_power(p, (n - 2) / 2);
    if (w == JacobiWeights::corrected) c *= rpow(p, (n - 2) / 2);
  }
  return c;
}

struct FirstKindVariant {
  JacobiWeights weights = JacobiWeights::corrected;
  Rational constant = 0;               // gamma corrected
  Rational constant_gamma_printed = 0;
  std::vector<FitResidual> residuals_finite;  // direct stream against the L* combination
  TwoTermFit fit;                       // direct stream against the lift expansion
  Rational ratio_c = 0, ratio_d = 0;    // c_{n,N}/c_n, d_{n,N}/d_n

  bool pass() const { return residuals_finite.empty() && fit.solved && fit.residuals.empty(); }
};

struct FirstKindOptionsFull {
  i64 bound = 40;
  int max_nu2 = 2;
  FirstKindOptions direct{};
  std::optional<std::pair<Rational, Rational>> cd;  // (c_n, d_n); fitted untwisted when absent
};

struct FirstKindReport {
  int n = 0, k = 0;
  i64 N = 1;
  std::string chi, chi_tilde;
  i64 bound = 0;
  int max_nu2 = 2;
  bool zero_branch = false;
  std::vector<i64> failing_primes;
  std::vector<std::string> psi;
  std::vector<i64> checked, excluded;
  std::vector<FitResidual> zero_residuals;
  std::vector<FirstKindVariant> variants;
  Rational c_n = 0, d_n = 0;
  long spot_checks = 0, spot_mismatches = 0;
  std::vector<std::string> notes;

  const FirstKindVariant* variant(JacobiWeights w) const {
    for (const auto& v : variants)
      if (v.weights == w) return &v;
    return nullptr;
  }
  bool pass() const {
    if (spot_mismatches) return false;
    if (zero_branch) return zero_residuals.empty();
    const auto* v = variant(JacobiWeights::corrected);
    return v && v->pass();
  }
};

// first-kind series: direct h(A, chi) route against the finite L* combination and the lift expansion
inline FirstKindReport verify_first_kind(const IkedaCoeffTable& T, const PlusForm& F, const DirichletChar& chi,
                                        Det1TableCache& cache, const FirstKindOptionsFull& opt = {}) {
  FirstKindReport r;
  r.n = T.n;
  r.k = T.k;
  r.N = chi.modulus();
  r.chi = chi.descriptor();
  r.bound = opt.bound;
  r.max_nu2 = opt.max_nu2;
  FirstKindPlan plan = first_kind_plan(chi, T.n);
  r.zero_branch = plan.zero_branch;
  r.failing_primes = plan.failing_primes;
  KMStream direct = km_stream_first(T, chi, opt.bound, cache, opt.direct);
  r.excluded.assign(direct.excluded.begin(), direct.excluded.end());
  r.checked = scope_indices(opt.bound, opt.max_nu2, direct.excluded);
  r.notes.push_back("scope: D = det(2T) <= " + std::to_string(opt.bound) + ", nu_2(D) <= " +
                    std::to_string(opt.max_nu2) + ", indices with excluded classes dropped");
  r.notes.push_back(std::string("direct route: h(A, chi) via ") +
                    (opt.direct.mode == HsumMode::brute_sym  ? "brute_sym"
                     : opt.direct.mode == HsumMode::brute_sl ? "brute_sl"
                                                             : "closed"));
  // closed h against the direct route, class by class
  if (opt.direct.mode != HsumMode::closed) {
    FirstKindOptions c = opt.direct;
    c.mode = HsumMode::closed;
    KMStream closed = km_stream_first(T, chi, opt.bound, cache, c);
    for (i64 D : r.checked) {
      ++r.spot_checks;
      if (closed.at(D) != direct.at(D)) ++r.spot_mismatches;
    }
  }
  if (plan.zero_branch) {
    for (i64 D : r.checked)
      if (!direct.at(D).is_zero()) r.zero_residuals.push_back({D, direct.at(D), CycloNum(0)});
    return r;
  }
  r.chi_tilde = plan.chi_tilde->descriptor();
  for (const auto& p : plan.psi) r.psi.push_back(p.descriptor());

  if (opt.cd) {
    r.c_n = opt.cd->first;
    r.d_n = opt.cd->second;
  } else {
    LiftIdentityOptions o;
    o.bound = opt.bound;
    o.max_nu2 = opt.max_nu2;
    o.shifts = {0};
    LiftIdentityReport base = verify_lift_identity(T, F, DirichletChar(1), o);
    if (!base.pass()) throw std::runtime_error("untwisted lift expansion does not fit; constants unavailable");
    r.c_n = base.fit.c;
    r.d_n = base.fit.d;
  }

  int P = F.h.precision();
  QExp E = cohen_eisenstein(F.n / 2, P).series;
  QExp S = shimura_image(F, P);
  std::vector<KMStream> Ls;
  std::vector<LiftStreams> Xs;
  for (const auto& p : plan.psi) {
    Ls.push_back(km_stream_second(T, p, opt.bound));
    Xs.push_back(lift_streams(F, E, S, p, opt.bound));
  }
  for (JacobiWeights w : {JacobiWeights::corrected, JacobiWeights::printed}) {
    FirstKindVariant v;
    v.weights = w;
    v.constant = first_kind_constant(r.N, r.n, w, GammaMode::corrected);
    v.constant_gamma_printed = first_kind_constant(r.N, r.n, w, GammaMode::printed);
    std::vector<CycloNum> wt;
    for (const auto& p : plan.psi) wt.push_back(first_kind_weight(p, r.n, w));
    auto comb = [&](const std::function<CycloNum(std::size_t, i64)>& term) {
      return [&, term](i64 D) {
        CycloNum s(0);
        for (std::size_t i = 0; i < wt.size(); ++i) s += wt[i] * term(i, D);
        return s;
      };
    };
    auto finite = comb([&](std::size_t i, i64 D) { return Ls[i].at(D); });
    for (i64 D : r.checked) {
      CycloNum rhs = CycloNum(v.constant) * finite(D);
      if (rhs != direct.at(D)) v.residuals_finite.push_back({D, direct.at(D), rhs});
    }
    v.fit = fit_two_term([&](i64 D) { return direct.at(D); }, comb([&](std::size_t i, i64 D) { return Xs[i].x1[D]; }),
                         comb([&](std::size_t i, i64 D) { return Xs[i].x2[D]; }), r.checked);
    if (v.fit.solved) {
      v.ratio_c = v.fit.c / r.c_n;
      v.ratio_d = v.fit.d / r.d_n;
    }
    r.variants.push_back(std::move(v));
  }
  return r;
}

namespace detail {
inline DirStream chi_assemble(const PlusForm& F, const DirichletChar& chi, i64 B, JacobiWeights w, bool second) {
  i64 N = chi.modulus();
  for (auto [p, e] : nt::factorize(N))
    if (e > 1 || p == 2) throw std::domain_error("modulus must be odd squarefree");
  if (!chi.pow(F.n).is_primitive()) throw std::domain_error("chi^n is not primitive");
  int P = F.h.precision();
  QExp E = cohen_eisenstein(F.n / 2, P).series;
  QExp S = shimura_image(F, P);
  DirStream r(B, "");
  for (const auto& eta : CharGroup(N).subgroup_Dm(F.n)) {
    DirichletChar psi = chi * eta;
    LiftStreams X = lift_streams(F, E, S, psi, B);
    r = r + first_kind_weight(psi, F.n, w) * (second ? X.x2 : X.x1);
  }
  r.tag = std::string(second ? "M^(" : "R^(") + chi.descriptor() + ")";
  return r;
}
}  // namespace detail

// sum_eta conj(chi eta)(2^n) J-weights R(s,h,E,chi eta) prod L(2s-2j,S(h),(chi eta)^2)
inline DirStream r_chi_assemble(const PlusForm& F, const DirichletChar& chi, i64 B,
                                JacobiWeights w = JacobiWeights::printed) {
  return detail::chi_assemble(F, chi, B, w, false);
}

// the same eta-sum over c_h(1) prod L(2s-2j+1,S(h),(chi eta)^2)
inline DirStream m_chi_assemble(const PlusForm& F, const DirichletChar& chi, i64 B,
                                JacobiWeights w = JacobiWeights::printed) {
  return detail::chi_assemble(F, chi, B, w, true);
}

}  // namespace kmlift
