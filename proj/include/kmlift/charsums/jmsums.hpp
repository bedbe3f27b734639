#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "kmlift/characters/dirichlet.hpp"
#include "kmlift/charsums/modmat.hpp"
#include "kmlift/charsums/quadsums.hpp"
#include "kmlift/util/budget.hpp"

namespace kmlift {

// joint histogram of (det Z, tr Z) over S_m(Z/N); cell index det * N + tr
struct DetTraceHistogram {
  int m;
  i64 N;
  std::vector<long> cells;

  DetTraceHistogram(int m_, i64 N_, const Budget& budget = {}) : m(m_), N(N_), cells(N_ * N_, 0) {
    int ne = m * (m + 1) / 2;
    budget.check("symmetric matrix enumeration", std::pow(static_cast<double>(N), ne));
    std::vector<std::pair<int, int>> pos;
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) pos.emplace_back(i, j);
    i64 total = nt::ipow(N, ne);
    std::vector<std::vector<long>> partial(std::max(1, budget.workers), std::vector<long>(N * N, 0));
    parallel_chunks(total, budget.workers, [&](i64 begin, i64 end, int w) {
      std::vector<i64> Z(m * m);
      for (i64 code = begin; code < end; ++code) {
        i64 c = code, tr = 0;
        for (auto [i, j] : pos) {
          Z[i * m + j] = Z[j * m + i] = c % N;
          c /= N;
          if (i == j) tr += Z[i * m + i];
        }
        i64 d = m == 0 ? 1 % N : det_mod_n(Z, m, N);
        partial[w][d * N + tr % N] += 1;
      }
    });
    for (auto& part : partial)
      for (std::size_t i = 0; i < cells.size(); ++i) cells[i] += part[i];
  }

  // integer determinant reduced mod N (Bareiss over Z, entries tiny)
  static i64 det_mod_n(const std::vector<i64>& Z, int m, i64 N) {
    if (nt::is_prime(N)) return det_mod_p(Z, m, N);
    std::vector<__int128> M(Z.begin(), Z.end());
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < m - 1; ++k) {
      if (M[k * m + k] == 0) {
        int sw = -1;
        for (int r = k + 1; r < m; ++r)
          if (M[r * m + k] != 0) {
            sw = r;
            break;
          }
        if (sw < 0) return 0;
        for (int c = 0; c < m; ++c) std::swap(M[k * m + c], M[sw * m + c]);
        sign = -sign;
      }
      for (int i = k + 1; i < m; ++i)
        for (int j = k + 1; j < m; ++j) M[i * m + j] = (M[i * m + j] * M[k * m + k] - M[i * m + k] * M[k * m + j]) / prev;
      prev = M[k * m + k];
    }
    __int128 d = sign * M[(m - 1) * m + (m - 1)];
    return nt::mod(static_cast<i64>(d % N), N);
  }

  // sum chi(det) eta(f(tr)), f(t) = t (shift 0) or 1 - t (shift 1)
  CycloNum sum(const DirichletChar& chi, const DirichletChar& eta, bool one_minus) const {
    int L = static_cast<int>(nt::lcm(chi.order(), eta.order()));
    std::vector<long> h(L, 0);
    for (i64 d = 0; d < N; ++d) {
      int a = chi.exponent(d);
      if (a < 0) continue;
      for (i64 t = 0; t < N; ++t) {
        long cnt = cells[d * N + t];
        if (!cnt) continue;
        int b = eta.exponent(one_minus ? 1 - t : t);
        if (b < 0) continue;
        h[(a * (L / chi.order()) + b * (L / eta.order())) % L] += cnt;
      }
    }
    return CycloNum::from_exponent_counts(L, h);
  }
};

inline CycloNum Im_brute(const DirichletChar& chi, const DirichletChar& eta, int m, const Budget& budget = {}) {
  return DetTraceHistogram(m, chi.modulus(), budget).sum(chi, eta, false);
}
inline CycloNum Jm_brute(const DirichletChar& chi, const DirichletChar& eta, int m, const Budget& budget = {}) {
  return DetTraceHistogram(m, chi.modulus(), budget).sum(chi, eta, true);
}

namespace detail {
inline void require_jm_hypotheses(const DirichletChar& chi, const DirichletChar& eta) {
  i64 p = chi.modulus();
  if (!nt::is_prime(p) || p == 2) throw std::domain_error("closed forms need an odd prime modulus");
  if (eta.modulus() != p) throw std::invalid_argument("character moduli differ");
  if (chi.is_trivial() || eta.is_trivial()) throw std::domain_error("closed forms need primitive characters");
  if (chi.pow(2).is_trivial()) throw std::domain_error("closed forms need chi^2 != 1");
}
inline int minus_one_power(i64 p, int e) { return (e % 2 != 0 && legendre(-1, p) == -1) ? -1 : 1; }
}  // namespace detail

inline CycloNum Jm_recursive(const DirichletChar& chi, const DirichletChar& eta, int m, Variant v);

// I_m via the closed formula, which reduces to J_{m-1}
inline CycloNum Im_closed(const DirichletChar& chi, const DirichletChar& eta, int m, Variant v = Variant::corrected) {
  detail::require_jm_hypotheses(chi, eta);
  i64 p = chi.modulus();
  if (m == 0) return CycloNum(0);
  if (!(chi.pow(m) * eta).is_trivial()) return CycloNum(0);
  DirichletChar rho = DirichletChar::jacobi_char(p);
  CycloNum tail = Jm_recursive(chi * rho, eta, m - 1, v);
  if (m % 2) return CycloNum(rpow(p, (m - 1) / 2) * (p - 1) * detail::minus_one_power(p, (m - 1) / 2)) * tail;
  return CycloNum(rpow(p, (m - 2) / 2) * (p - 1) * detail::minus_one_power(p, m / 2)) * chi.value(-1) *
         jacobi_sum(chi, rho) * tail;
}

// J_m via the general one-step recursion in J_{m-1} and I_{m-1}
inline CycloNum Jm_recursive(const DirichletChar& chi, const DirichletChar& eta, int m, Variant v) {
  detail::require_jm_hypotheses(chi, eta);
  i64 p = chi.modulus();
  if (m == 0) return CycloNum(1);
  DirichletChar rho = DirichletChar::jacobi_char(p);
  DirichletChar cr = chi * rho;
  CycloNum Jprev = Jm_recursive(cr, eta, m - 1, v);
  CycloNum Iprev = Im_closed(cr, eta, m - 1, v);
  if (m % 2) {
    CycloNum brace = jacobi_sum(chi, chi.pow(m - 1) * eta) * Jprev + eta.value(-1) * Iprev;
    return CycloNum(rpow(p, (m - 1) / 2) * legendre(((m - 1) / 2) % 2 ? -1 : 1, p)) * brace;
  }
  CycloNum brace = jacobi_sum(cr, chi.pow(m - 1) * rho * eta) * Jprev + eta.value(-1) * Iprev;
  int e = v == Variant::printed ? m / 2 : (m - 2) / 2;
  return CycloNum(rpow(p, (m - 2) / 2) * detail::minus_one_power(p, e)) * jacobi_sum(chi, rho) * brace;
}

// J_m(chi rho^i, chi) by the two-step case analysis in chi^m; i in {0, 1}
inline CycloNum Jm_twisted(const DirichletChar& chi, int i, int m, Variant v) {
  i64 p = chi.modulus();
  detail::require_jm_hypotheses(chi, chi);
  i %= 2;
  if (m == 0) return CycloNum(1);
  DirichletChar rho = DirichletChar::jacobi_char(p);
  DirichletChar ci = i ? chi * rho : chi, ci1 = i ? chi : chi * rho;
  if (m == 1) return jacobi_sum(ci, chi);
  if (m % 2) {
    if (!chi.pow(m).is_trivial())
      return CycloNum(rpow(p, (m - 1) / 2) * detail::minus_one_power(p, (m - 1) / 2)) * jacobi_sum(ci, chi.pow(m)) *
             Jm_twisted(chi, i + 1, m - 1, v);
    return CycloNum(rpow(p, m - 1) * detail::minus_one_power(p, i + 1)) * jacobi_sum(ci1, rho) *
           Jm_twisted(chi, i, m - 2, v);
  }
  DirichletChar mixed = chi.pow(m) * (i + 1 == 1 ? rho : DirichletChar(p));
  if (!mixed.is_trivial()) {
    Rational scale = v == Variant::printed ? Rational(1) : rpow(p, (m - 2) / 2);
    return CycloNum(scale * detail::minus_one_power(p, (m - 2) / 2)) * jacobi_sum(ci, rho) * jacobi_sum(ci1, mixed) *
           Jm_twisted(chi, i + 1, m - 1, v);
  }
  return CycloNum(rpow(p, m - 1)) * chi.value(-1) * jacobi_sum(ci, rho) * Jm_twisted(chi, i, m - 2, v);
}

namespace detail {
inline const DetTraceHistogram& cached_histogram(int m, i64 p) {
  static std::mutex mu;
  static std::map<std::pair<int, i64>, std::unique_ptr<DetTraceHistogram>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{m, p}];
  if (!slot) slot = std::make_unique<DetTraceHistogram>(m, p);
  return *slot;
}
}  // namespace detail

// J_m(chi) = J_m(chi (*/N)^{m-1}, chi), N odd squarefree, prime by prime;
// components with chi^2 = 1 are summed directly
inline CycloNum Jm_chi(const DirichletChar& chi, int m, Variant v = Variant::corrected) {
  CycloNum prod(1);
  for (auto [p, e] : nt::factorize(chi.modulus())) {
    if (e > 1 || p == 2) throw std::invalid_argument("J_m(chi) needs an odd squarefree modulus");
    DirichletChar c = chi.local_component(p);
    if (m == 0) continue;
    if (c.pow(2).is_trivial()) {
      DirichletChar first = (m - 1) % 2 ? c * DirichletChar::jacobi_char(p) : c;
      prod *= detail::cached_histogram(m, p).sum(first, c, true);
    } else {
      prod *= Jm_twisted(c, (m - 1) % 2, m, v);
    }
  }
  return prod;
}

// J(chi, rho) J(chi rho, chi rho) and the closed value (-1/p) conj(chi)(4) p
struct JacobiProductValues {
  CycloNum lhs, rhs;
};
inline JacobiProductValues prop_5_10(const DirichletChar& chi) {
  i64 p = chi.modulus();
  DirichletChar rho = DirichletChar::jacobi_char(p);
  DirichletChar cr = chi * rho;
  return {jacobi_sum(chi, rho) * jacobi_sum(cr, cr), CycloNum(legendre(-1, p) * p) * chi.conj().value(4)};
}

}  // namespace kmlift
