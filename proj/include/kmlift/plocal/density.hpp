#pragma once

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "kmlift/plocal/padic.hpp"
#include "kmlift/util/budget.hpp"

namespace kmlift {

namespace detail {

// #{X mod p^b : G0[X] = G0, off-diagonal mod p^c, diagonal mod p^cd}
inline Integer count_self_reps(const GramMat& G0, i64 p, int b, int c, int cd, const Budget& budget) {
  int n = G0.n;
  i64 q = nt::ipow(p, b), mc = nt::ipow(p, c), md = nt::ipow(p, cd);
  double nvec = std::pow(static_cast<double>(q), n);
  budget.check("local density brute force", nvec * n);
  if (nvec > 4.0e6) throw BudgetExceeded("local density vector table", nvec, 4.0e6);
  std::vector<std::vector<i64>> vecs;
  std::vector<std::vector<i64>> images;  // G0 v mod q
  std::vector<i64> norms;
  std::vector<i64> v(n, 0);
  for (long idx = 0; idx < static_cast<long>(nvec); ++idx) {
    long t = idx;
    for (int i = 0; i < n; ++i) v[i] = t % q, t /= q;
    std::vector<i64> w(n, 0);
    for (int i = 0; i < n; ++i) {
      i64 s = 0;
      for (int j = 0; j < n; ++j) s += G0.at(i, j) * v[j];
      w[i] = s;
    }
    i64 nrm = 0;
    for (int i = 0; i < n; ++i) nrm += v[i] * w[i];
    vecs.push_back(v);
    images.push_back(w);
    norms.push_back(nrm);
  }
  std::vector<std::vector<int>> cand(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < static_cast<int>(vecs.size()); ++i)
      if (nt::mod(norms[i] - G0.at(k, k), md) == 0) cand[k].push_back(i);
  auto auts = automorphism_group(G0);
  auto index_of = [&](const std::vector<i64>& x) {
    long idx = 0, mul = 1;
    for (int i = 0; i < n; ++i) idx += nt::mod(x[i], q) * mul, mul *= q;
    return idx;
  };
  double steps = 0;
  auto tick = [&]() {
    if (++steps > budget.max_steps) throw BudgetExceeded("local density brute force", steps, budget.max_steps);
  };
  auto fits = [&](const std::vector<int>& cols, int k, int i) {
    for (int j = 0; j < k; ++j) {
      i64 s = 0;
      const auto& w = images[cols[j]];
      for (int r = 0; r < n; ++r) s += w[r] * vecs[i][r];
      if (nt::mod(s - G0.at(j, k), mc) != 0) return false;
    }
    return true;
  };
  std::vector<int> cols(n);
  std::function<bool(int)> extendable = [&](int k) -> bool {
    if (k == n) return true;
    for (int i : cand[k]) {
      tick();
      if (!fits(cols, k, i)) continue;
      cols[k] = i;
      if (extendable(k + 1)) return true;
    }
    return false;
  };
  // the solutions form a group; multiply orbit sizes of e_0, e_1, ... along the stabilizer chain
  Integer order = 1;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      std::vector<i64> e(n, 0);
      e[j] = 1;
      cols[j] = static_cast<int>(index_of(e));
    }
    std::vector<IntMat> stab;
    for (auto& U : auts) {
      bool fixes = true;
      for (int j = 0; j < k && fixes; ++j)
        for (int r = 0; r < n; ++r)
          if (U[r * n + j] != (r == j ? 1 : 0)) fixes = false;
      if (fixes) stab.push_back(U);
    }
    std::set<long> seen;
    long orbit_total = 0;
    for (int i : cand[k]) {
      long id = index_of(vecs[i]);
      if (seen.count(id)) continue;
      if (!fits(cols, k, i)) continue;
      std::set<long> orbit;
      for (auto& U : stab) {
        std::vector<i64> y(n, 0);
        for (int r = 0; r < n; ++r)
          for (int t = 0; t < n; ++t) y[r] += U[r * n + t] * vecs[i][t];
        orbit.insert(index_of(y));
      }
      for (long o : orbit) seen.insert(o);
      cols[k] = i;
      if (extendable(k + 1)) orbit_total += static_cast<long>(orbit.size());
    }
    order *= orbit_total;
  }
  return order;
}

}  // namespace detail

struct DensityBrute {
  Rational value;
  int level = 0;  // a at which two consecutive levels agreed
};

// alpha_p(G) = 2^{-1} lim p^{a(n(n+1)/2 - n^2)} #{X mod p^a : G[X] - G in p^a S_n(Z_p)_e}
inline Rational local_density_at_level(const GramMat& G, i64 p, int a, const Budget& budget = {}) {
  int n = G.n;
  // strip the common p-power so the search runs on a primitive form
  i64 g = 0;
  for (auto x : G.g) g = std::gcd(g, x);
  int s = nt::valuation(g, p);
  i64 ps = nt::ipow(p, s);
  IntMat h = G.g;
  for (auto& x : h) x /= ps;
  bool odd_diag = false;
  for (int i = 0; i < n; ++i) odd_diag |= (h[i * n + i] % 2 != 0);
  int c = a - s;
  if (c < 1) throw std::invalid_argument("level too small for this form");
  int cd = (p == 2) ? c + 1 : c;
  int b = (p == 2 && odd_diag) ? c + 1 : c;
  if (b > a) throw std::invalid_argument("level too small for this form");
  GramMat G0;
  G0.n = n;
  G0.g = h;
  Integer cnt = detail::count_self_reps(G0, p, b, c, cd, budget);
  Rational total = Rational(cnt) * rpow(p, static_cast<long>(n) * n * (a - b));
  return total * rpow(p, static_cast<long>(a) * (n * (n + 1) / 2 - n * n)) / 2;
}

inline DensityBrute local_density_brute(const GramMat& G, i64 p, const Budget& budget = {}, int max_level = 8) {
  i64 g = 0;
  for (auto x : G.g) g = std::gcd(g, x);
  // the density can repeat below this level before settling
  int s = nt::valuation(g, p);
  i64 det = to_long(G.det());
  int start = s + nt::valuation(det < 0 ? -det : det, p) - G.n * s + 1;
  Rational prev = local_density_at_level(G, p, start, budget);
  for (int a = start + 1; a <= max_level; ++a) {
    Rational cur = local_density_at_level(G, p, a, budget);
    if (cur == prev) return {cur, a - 1};
    prev = cur;
  }
  throw std::runtime_error("local density did not stabilize");
}

// Jordan-data formula for p odd
inline Rational local_density_closed(const JordanSymbol& J) {
  i64 p = J.p;
  Rational v = 1;
  int s = 0;
  long w = 0;
  for (std::size_t a = 0; a < J.blocks.size(); ++a) {
    const auto& B = J.blocks[a];
    if (!B.dim) continue;
    ++s;
    w += static_cast<long>(B.scale) * B.dim * (B.dim + 1) / 2;
    for (std::size_t b = a + 1; b < J.blocks.size(); ++b) w += static_cast<long>(B.scale) * B.dim * J.blocks[b].dim;
    for (int i = 1; i <= B.dim / 2; ++i) v *= 1 - rpow(p, -2 * i);
    if (B.dim % 2 == 0) {
      int chi = B.det_class * legendre((B.dim / 2) % 2 ? p - 1 : 1, p);
      v /= 1 + chi * rpow(p, -B.dim / 2);
    }
  }
  return v * rpow(2, s - 1) * rpow(p, w);
}

inline Rational local_density_closed(const GramMat& G, i64 p) {
  if (p == 2) throw std::invalid_argument("closed dyadic density is not supported; use brute mode");
  return local_density_closed(jordan_decompose(G, p));
}

}  // namespace kmlift
