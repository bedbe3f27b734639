#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "kmlift/charsums/modmat.hpp"
#include "kmlift/exactalg/rational.hpp"
#include "kmlift/util/budget.hpp"

namespace kmlift {

namespace detail {

inline void require_odd_prime(i64 p) {
  if (p == 2) throw std::domain_error("p = 2 is not supported for finite-field counts");
  if (!nt::is_prime(p)) throw std::invalid_argument("modulus must be an odd prime");
}

// all vectors of F_p^m, index = base-p digits (coordinate 0 least significant)
inline std::vector<std::vector<i64>> all_vectors(int m, i64 p) {
  i64 total = nt::ipow(p, m);
  std::vector<std::vector<i64>> out(total, std::vector<i64>(m));
  for (i64 idx = 0; idx < total; ++idx) {
    i64 x = idx;
    for (int k = 0; k < m; ++k) {
      out[idx][k] = x % p;
      x /= p;
    }
  }
  return out;
}

inline i64 bilinear(const SymMatModN& S, const std::vector<i64>& u, const std::vector<i64>& v) {
  i64 s = 0;
  for (int i = 0; i < S.m; ++i) {
    if (!u[i]) continue;
    i64 t = 0;
    for (int j = 0; j < S.m; ++j) t += S.at(i, j) * v[j];
    s += u[i] * (t % S.N);
  }
  return nt::mod(s, S.N);
}

}  // namespace detail

// #{Y in M_{r,m}(F_p) : Y S Y^t = T}, exhaustive
inline Integer count_A_brute(const SymMatModN& S, const SymMatModN& T) {
  i64 p = S.N;
  detail::require_odd_prime(p);
  if (T.N != p) throw std::invalid_argument("moduli differ");
  int m = S.m, r = T.m;
  auto vecs = detail::all_vectors(m, p);
  std::vector<std::vector<int>> by_norm(p);
  for (std::size_t i = 0; i < vecs.size(); ++i) by_norm[detail::bilinear(S, vecs[i], vecs[i])].push_back(static_cast<int>(i));
  std::vector<int> chosen(r);
  Integer total = 0;
  std::function<void(int)> rec = [&](int row) {
    if (row == r) {
      total += 1;
      return;
    }
    for (int idx : by_norm[T.at(row, row)]) {
      bool ok = true;
      for (int prev = 0; prev < row && ok; ++prev)
        if (detail::bilinear(S, vecs[chosen[prev]], vecs[idx]) != T.at(prev, row)) ok = false;
      if (!ok) continue;
      chosen[row] = idx;
      rec(row + 1);
    }
  };
  rec(0);
  return total;
}

// general product formula for #A(S,T), S and T nondegenerate, m >= r
inline Rational count_A_closed(const SymMatModN& S, const SymMatModN& T) {
  i64 p = S.N;
  detail::require_odd_prime(p);
  int m = S.m, r = T.m;
  if (r > m) throw std::invalid_argument("need m >= r");
  if (det_mod_p(S) == 0 || (r > 0 && det_mod_p(T) == 0)) throw std::domain_error("closed count needs nondegenerate S and T");
  Rational v = rpow(p, static_cast<long>(r) * m - static_cast<long>(r) * (r + 1) / 2);
  for (int e = m - r + 1; e <= m - 1; ++e)
    if (e % 2 == 0) v *= 1 - rpow(p, -e);
  auto chi_sum = [&]() { return chi_of(orthogonal_sum(negate(S), T)); };
  bool r_even = r % 2 == 0, m_even = m % 2 == 0;
  if (m_even) v *= 1 - chi_of(S) * rpow(p, -m / 2);
  if (r_even && m_even) v *= 1 + chi_sum() * rpow(p, (r - m) / 2);
  if (!r_even && !m_even) v *= 1 + chi_sum() * rpow(p, (r - m) / 2);
  return v;
}

// the specialized r = 1 displays (c a unit), evaluated verbatim
inline Rational count_A_display(const SymMatModN& S, i64 c) {
  i64 p = S.N;
  int m = S.m;
  i64 d = det_mod_p(S);
  if (m % 2 == 0) {
    int s = legendre((m / 2) % 2 ? -d : d, p);
    return rpow(p, m / 2 - 1) * (rpow(p, m / 2) - s);
  }
  int s = legendre(((m + 1) / 2) % 2 ? -c * d : c * d, p);
  return rpow(p, (m - 1) / 2) * (rpow(p, (m - 1) / 2) + s);
}

inline Integer count_A0_brute(const SymMatModN& S) {
  SymMatModN zero(1, S.N);
  return count_A_brute(S, zero);
}

inline Rational count_A0_closed(const SymMatModN& S) {
  i64 p = S.N;
  detail::require_odd_prime(p);
  int m = S.m;
  if (det_mod_p(S) == 0) throw std::domain_error("count_A0 needs nondegenerate S");
  if (m % 2) return rpow(p, m - 1);
  int s = chi_of(S);
  return rpow(p, m / 2 - 1) * (rpow(p, m / 2) - s) + rpow(p, m / 2) * s;
}

enum class GammaMode { printed, corrected };

inline Rational gamma_const(int m, i64 p, GammaMode mode) {
  Rational v = rpow(p, static_cast<long>(m) * m - static_cast<long>(m) * (m + 1) / 2);
  if (m % 2 == 0) {
    int s = mode == GammaMode::corrected ? legendre((m / 2) % 2 ? -1 : 1, p) : 1;
    v *= 1 - s * rpow(p, -m / 2);
    for (int e = 1; e <= (m - 2) / 2; ++e) v *= 1 - rpow(p, -2 * e);
  } else {
    for (int e = 1; e <= (m - 1) / 2; ++e) v *= 1 - rpow(p, -2 * e);
  }
  return v;
}

// hist[c] = #{X in SL_m(F_p) : sum_i A[row_i(X)] = c}
inline std::vector<long> sl_trace_histogram_prime(const SymMatModN& A, const Budget& budget = {}) {
  i64 p = A.N;
  detail::require_odd_prime(p);
  int m = A.m;
  double steps = std::pow(static_cast<double>(p), m * m - 1) * m;
  budget.check("SL enumeration", steps);
  std::vector<long> hist(p, 0);
  if (m == 1) {
    hist[A.at(0, 0)] = 1;
    return hist;
  }
  auto vecs = detail::all_vectors(m, p);
  std::vector<i64> norm(vecs.size());
  for (std::size_t i = 0; i < vecs.size(); ++i) norm[i] = detail::bilinear(A, vecs[i], vecs[i]);
  i64 nv = static_cast<i64>(vecs.size());
  i64 outer = nt::ipow(nv, m - 1);
  std::vector<std::vector<long>> partial(std::max(1, budget.workers), std::vector<long>(p, 0));
  parallel_chunks(outer, budget.workers, [&](i64 begin, i64 end, int w) {
    auto& h = partial[w];
    std::vector<i64> M(m * m);
    std::vector<i64> C(m);
    std::vector<i64> x(m);
    for (i64 code = begin; code < end; ++code) {
      i64 c = code, s = 0;
      for (int r = 0; r < m - 1; ++r) {
        i64 idx = c % nv;
        c /= nv;
        for (int k = 0; k < m; ++k) M[r * m + k] = vecs[idx][k];
        s += norm[idx];
      }
      // cofactors of the last row
      int j0 = -1;
      for (int j = 0; j < m; ++j) {
        std::vector<i64> minor;
        minor.reserve((m - 1) * (m - 1));
        for (int r = 0; r < m - 1; ++r)
          for (int k = 0; k < m; ++k)
            if (k != j) minor.push_back(M[r * m + k]);
        i64 d = det_mod_p(minor, m - 1, p);
        C[j] = ((m - 1 + j) % 2) ? nt::mod(-d, p) : d;
        if (C[j] && j0 < 0) j0 = j;
      }
      if (j0 < 0) continue;
      i64 inv = nt::invmod(C[j0], p);
      i64 free_count = nt::ipow(p, m - 1);
      for (i64 f = 0; f < free_count; ++f) {
        i64 t = f, lin = 0;
        for (int j = 0; j < m; ++j) {
          if (j == j0) continue;
          x[j] = t % p;
          t /= p;
          lin += x[j] * C[j];
        }
        x[j0] = nt::mulmod(nt::mod(1 - lin, p), inv, p);
        i64 idx = 0;
        for (int k = m - 1; k >= 0; --k) idx = idx * p + x[k];
        h[(s + norm[idx]) % p] += 1;
      }
    }
  });
  for (std::size_t w = 1; w < partial.size(); ++w)
    for (i64 c = 0; c < p; ++c) partial[0][c] += partial[w][c];
  return partial[0];
}

inline SymMatModN reduce_mod(const SymMatModN& A, i64 q) {
  SymMatModN B(A.m, q);
  for (std::size_t i = 0; i < A.a.size(); ++i) B.a[i] = nt::mod(A.a[i], q);
  return B;
}

// CRT assembly of per-prime histograms, N odd squarefree
inline std::vector<long> sl_trace_histogram(const SymMatModN& A, const Budget& budget = {}) {
  i64 N = A.N;
  std::vector<long> hist{1};
  i64 M = 1;
  for (auto [p, e] : nt::factorize(N)) {
    if (e > 1) throw std::invalid_argument("modulus must be squarefree");
    auto hp = sl_trace_histogram_prime(reduce_mod(A, p), budget);
    std::vector<long> next(M * p, 0);
    for (i64 a = 0; a < M; ++a)
      for (i64 b = 0; b < p; ++b) next[nt::crt(a, M, b, p)] += hist[a] * hp[b];
    hist = std::move(next);
    M *= p;
  }
  return hist;
}

inline long count_R(const SymMatModN& A, i64 c, const Budget& budget = {}) {
  return sl_trace_histogram(A, budget)[nt::mod(c, A.N)];
}

// table[digits(z_11..z_mm)] = #{Z in S_m(F_p): diag(Z) = z, det Z = 1}
inline std::vector<long> det1_diagonal_table(int m, i64 p, const Budget& budget = {}) {
  detail::require_odd_prime(p);
  budget.check("symmetric det-1 enumeration", std::pow(static_cast<double>(p), m * (m + 1) / 2 - 1) * m * m);
  i64 tsize = nt::ipow(p, m);
  std::vector<long> table(tsize, 0);
  int k = m - 1;
  // upper-triangular entries of Z1
  std::vector<std::pair<int, int>> pos;
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) pos.emplace_back(i, j);
  i64 nz1 = nt::ipow(p, static_cast<int>(pos.size()));
  i64 nw = nt::ipow(p, k);
  i64 pk = nt::ipow(p, k);
  std::vector<std::vector<long>> partial(std::max(1, budget.workers), std::vector<long>(tsize, 0));
  parallel_chunks(nz1, budget.workers, [&](i64 begin, i64 end, int wk) {
    auto& tab = partial[wk];
    std::vector<i64> Z1(k * k), adj(k * k), w(k);
    for (i64 code = begin; code < end; ++code) {
      i64 c = code;
      for (auto [i, j] : pos) {
        Z1[i * k + j] = Z1[j * k + i] = c % p;
        c /= p;
      }
      i64 d1 = k == 0 ? 1 : det_mod_p(Z1, k, p);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          std::vector<i64> minor;
          for (int r = 0; r < k; ++r)
            for (int s = 0; s < k; ++s)
              if (r != j && s != i) minor.push_back(Z1[r * k + s]);
          i64 d = k == 1 ? 1 : det_mod_p(minor, k - 1, p);
          adj[i * k + j] = ((i + j) % 2) ? nt::mod(-d, p) : d;
        }
      i64 prefix = 0;
      for (int i = k - 1; i >= 0; --i) prefix = prefix * p + Z1[i * k + i];
      i64 inv1 = d1 ? nt::invmod(d1, p) : 0;
      for (i64 wc = 0; wc < nw; ++wc) {
        i64 t = wc;
        for (int i = 0; i < k; ++i) {
          w[i] = t % p;
          t /= p;
        }
        i64 q = 0;
        for (int i = 0; i < k; ++i) {
          if (!w[i]) continue;
          i64 row = 0;
          for (int j = 0; j < k; ++j) row += adj[i * k + j] * w[j];
          q += w[i] * (row % p);
        }
        q = nt::mod(q, p);
        // det Z = d1 * z - q
        if (d1) {
          i64 z = nt::mulmod(nt::mod(1 + q, p), inv1, p);
          tab[prefix + z * pk] += 1;
        } else if (nt::mod(-q, p) == 1) {
          for (i64 z = 0; z < p; ++z) tab[prefix + z * pk] += 1;
        }
      }
    }
  });
  for (std::size_t w = 0; w < partial.size(); ++w)
    for (i64 i = 0; i < tsize; ++i) table[i] += partial[w][i];
  return table;
}

// hist[c] = #M_p(A, c) for diagonal A
inline std::vector<long> count_M_histogram(const std::vector<i64>& diag, i64 p, const std::vector<long>& table) {
  int m = static_cast<int>(diag.size());
  std::vector<long> hist(p, 0);
  i64 tsize = static_cast<i64>(table.size());
  for (i64 idx = 0; idx < tsize; ++idx) {
    if (!table[idx]) continue;
    i64 t = idx, c = 0;
    for (int i = 0; i < m; ++i) {
      c += diag[i] * (t % p);
      t /= p;
    }
    hist[nt::mod(c, p)] += table[idx];
  }
  return hist;
}

inline long count_M(const SymMatModN& A, i64 c, const Budget& budget = {}) {
  if (!A.is_diagonal()) throw std::invalid_argument("count_M needs a diagonal matrix");
  std::vector<i64> d;
  for (int i = 0; i < A.m; ++i) d.push_back(A.at(i, i));
  return count_M_histogram(d, A.N, det1_diagonal_table(A.m, A.N, budget))[nt::mod(c, A.N)];
}

}  // namespace kmlift
