#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "kmlift/characters/dirichlet.hpp"
#include "kmlift/charsums/counts.hpp"
#include "kmlift/charsums/jmsums.hpp"
#include "kmlift/charsums/modmat.hpp"

namespace kmlift {

// T = G/2 reduced mod odd N
inline SymMatModN halfintegral_mod(const std::vector<i64>& gram, int n, i64 N) {
  if (N % 2 == 0) throw std::invalid_argument("modulus must be odd");
  i64 inv2 = nt::invmod(2, N);
  SymMatModN A(n, N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A.a[i * n + j] = nt::mulmod(nt::mod(gram[i * n + j], N), inv2, N);
  return A;
}

// chi(det A) for half-integral A = G/2 of size m: conj(chi(2^{2[m/2]})) chi(2^{2[m/2]} det A)
inline CycloNum chi_det_halfintegral(const DirichletChar& chi, const Integer& det_gram, int m) {
  if (chi.conductor() % 2 == 0) throw std::domain_error("character conductor must be odd");
  i64 k = 2 * (m / 2);
  Integer scaled = m % 2 ? Integer(det_gram / 2) : det_gram;
  i64 r = Integer(scaled % chi.modulus()).get_si();
  return chi.conj().value(nt::powmod(2, k, chi.modulus())) * chi.value(nt::mod(r, chi.modulus()));
}

enum class HsumMode { brute_sl, brute_sym, closed };

// Which closed form for m even: the two printed versions differ in the
// conjugation of the first Jacobi factor; "derived" follows the proof without
// the final reindexing.
enum class HsumForm { printed_conj, printed_plain, derived };

struct HsumOptions {
  GammaMode gamma = GammaMode::corrected;
  HsumForm form = HsumForm::derived;
};

inline const char* hsum_form_name(HsumForm f) {
  switch (f) {
    case HsumForm::printed_conj: return "printed_conj";
    case HsumForm::printed_plain: return "printed_plain";
    default: return "derived";
  }
}

// Shared per-(m,p) tables of det-1 symmetric matrices by diagonal.
class Det1TableCache {
 public:
  explicit Det1TableCache(Budget b = {}) : budget_(b) {}
  const std::vector<long>& get(int m, i64 p) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(m, p);
    auto it = tables_.find(key);
    if (it == tables_.end()) it = tables_.emplace(key, det1_diagonal_table(m, p, budget_)).first;
    return it->second;
  }

 private:
  Budget budget_;
  std::mutex mu_;
  std::map<std::pair<int, i64>, std::vector<long>> tables_;
};

inline CycloNum h_sum_brute_sl(const SymMatModN& A, const DirichletChar& chi, const Budget& budget = {}) {
  if (chi.modulus() != A.N) throw std::invalid_argument("character modulus differs from matrix modulus");
  return char_sum_from_histogram(chi, sl_trace_histogram(A, budget));
}

inline CycloNum h_sum_brute_sym(const SymMatModN& A, const DirichletChar& chi, Det1TableCache& cache) {
  if (chi.modulus() != A.N) throw std::invalid_argument("character modulus differs from matrix modulus");
  CycloNum prod(1);
  for (auto [p, e] : nt::factorize(A.N)) {
    if (e > 1) throw std::invalid_argument("modulus must be squarefree");
    SymMatModN Ap = reduce_mod(A, p);
    auto D = diagonalize_mod_p(Ap);
    auto hist = count_M_histogram(D.d, p, cache.get(A.m, p));
    prod *= CycloNum(gamma_const(A.m, p, GammaMode::corrected)) * char_sum_from_histogram(chi.local_component(p), hist);
  }
  return prod;
}

namespace detail {

inline std::optional<DirichletChar> mth_root(const DirichletChar& chi, int m) {
  for (auto& c : CharGroup(chi.modulus()).chars())
    if (c.pow(m) == chi) return c;
  return std::nullopt;
}

inline CycloNum h_closed_prime(i64 det_mod, int m, const DirichletChar& chi, const HsumOptions& opt) {
  i64 p = chi.modulus();
  i64 l = nt::gcd(m, p - 1);
  i64 u0 = find_primitive_root_of_unity_mod(p, l);
  if (chi.exponent(u0) != 0) return CycloNum(0);
  if (m % 2 && chi.pow(2).is_trivial()) throw std::domain_error("odd size needs chi^2 != 1");
  auto tilde = mth_root(chi, m);
  if (!tilde) throw std::logic_error("no m-th root character");
  DirichletChar rho = DirichletChar::jacobi_char(p);
  CycloNum sum(0);
  for (auto& eta : CharGroup(p).subgroup_Dm(m)) {
    DirichletChar psi = *tilde * eta;
    CycloNum term = psi.value(det_mod);
    if (term.is_zero()) continue;
    DirichletChar pb = psi.conj();
    if (m % 2 == 0) {
      switch (opt.form) {
        case HsumForm::printed_conj: term *= jacobi_sum(pb, rho); break;
        case HsumForm::printed_plain: term *= jacobi_sum(psi, rho); break;
        case HsumForm::derived: term *= jacobi_sum(pb * rho, rho); break;
      }
    }
    term *= Jm_chi(pb, m - 1);
    sum += term;
  }
  Rational c = gamma_const(m, p, opt.gamma);
  if (m % 2 == 0) {
    int e = opt.form == HsumForm::derived ? (m - 2) / 2 : m / 2;
    c *= rpow(p, (m - 2) / 2) * minus_one_power(p, e);
  } else {
    c *= rpow(p, (m - 1) / 2) * minus_one_power(p, (m - 1) / 2);
  }
  return CycloNum(c) * sum;
}

}  // namespace detail

// closed evaluation, prime by prime
inline CycloNum h_sum_closed(const SymMatModN& A, const DirichletChar& chi, const HsumOptions& opt = {}) {
  if (chi.modulus() != A.N) throw std::invalid_argument("character modulus differs from matrix modulus");
  if (!chi.is_primitive()) throw std::domain_error("closed form needs a primitive character");
  CycloNum prod(1);
  for (auto [p, e] : nt::factorize(A.N)) {
    if (e > 1 || p == 2) throw std::invalid_argument("modulus must be odd squarefree");
    i64 d = det_mod_p(reduce_mod(A, p));
    prod *= detail::h_closed_prime(d, A.m, chi.local_component(p), opt);
    if (prod.is_zero()) return prod;
  }
  return prod;
}

}  // namespace kmlift
