#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmlift/characters/quadratic.hpp"
#include "kmlift/quadforms/isometry.hpp"
#include "kmlift/util/budget.hpp"

namespace kmlift {

struct DiscSplit {
  i64 d = 1;
  i64 f = 1;
};

// (-1)^{n/2} det G = d f^2 with d a fundamental discriminant
inline DiscSplit disc_split_value(i64 D) {
  if (D == 0) throw std::invalid_argument("disc split of zero");
  i64 d0 = nt::squarefree_part(D);
  i64 f2 = D / d0;
  i64 f = nt::isqrt(f2);
  if (nt::mod(d0, 4) == 1) return {d0, f};
  if (f % 2) throw std::domain_error("value is not a discriminant: " + std::to_string(D));
  return {4 * d0, f / 2};
}

inline DiscSplit disc_split(const GramMat& G) {
  if (G.n % 2) throw std::invalid_argument("disc split needs even size");
  i64 D = to_long(G.det());
  if ((G.n / 2) % 2) D = -D;
  return disc_split_value(D);
}

// prod_{i<=j} (a_i, a_j)_p after diagonalizing over Q
inline int hasse_invariant(const std::vector<Rational>& A, int n, i64 p) {
  std::vector<Rational> M = A;
  std::vector<Rational> a;
  for (int k = 0; k < n; ++k) {
    if (M[k * n + k] == 0) {
      int r = -1;
      for (int j = k + 1; j < n; ++j)
        if (M[k * n + j] != 0) r = j;
      if (r < 0) throw std::invalid_argument("degenerate form");
      // e_k += e_r (or e_k -= e_r if that keeps the pivot nonzero)
      Rational s = (M[r * n + r] + 2 * M[k * n + r] != 0) ? Rational(1) : Rational(-1);
      for (int j = 0; j < n; ++j) M[k * n + j] += s * M[r * n + j];
      for (int j = 0; j < n; ++j) M[j * n + k] += s * M[j * n + r];
      if (M[k * n + k] == 0) throw std::invalid_argument("degenerate form");
    }
    Rational piv = M[k * n + k];
    a.push_back(piv);
    for (int i = k + 1; i < n; ++i) {
      Rational c = M[i * n + k] / piv;
      for (int j = k; j < n; ++j) M[i * n + j] -= c * M[k * n + j];
      for (int j = k; j < n; ++j) M[j * n + i] -= c * M[j * n + k];
    }
  }
  int h = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) h *= hilbert_symbol(a[i], a[j], p);
  return h;
}

inline int hasse_invariant(const GramMat& G, i64 p) {
  std::vector<Rational> A(G.g.begin(), G.g.end());
  for (auto& x : A) x /= 2;
  return hasse_invariant(A, G.n, p);
}

// Smith form d_1 | ... | d_n of G with V such that L*/L is generated by V e_i / d_i
struct DiscriminantGroup {
  std::vector<i64> orders;          // nontrivial invariant factors
  std::vector<Rational> gram;       // b(g_i, g_j) lifted to Q
  std::vector<std::vector<i64>> lifts;  // g_i = lifts[i] / orders[i]
  long size() const {
    long s = 1;
    for (auto d : orders) s *= static_cast<long>(d);
    return s;
  }
};

inline DiscriminantGroup discriminant_group(const GramMat& G) {
  int n = G.n;
  std::vector<i64> M = G.g;
  IntMat V = identity_mat(n);
  auto col_op = [&](int dst, int src, i64 q) {  // col dst -= q col src
    for (int r = 0; r < n; ++r) M[r * n + dst] -= q * M[r * n + src];
    for (int r = 0; r < n; ++r) V[r * n + dst] -= q * V[r * n + src];
  };
  auto row_op = [&](int dst, int src, i64 q) {
    for (int c = 0; c < n; ++c) M[dst * n + c] -= q * M[src * n + c];
  };
  auto swap_cols = [&](int a, int b) {
    for (int r = 0; r < n; ++r) std::swap(M[r * n + a], M[r * n + b]), std::swap(V[r * n + a], V[r * n + b]);
  };
  auto swap_rows = [&](int a, int b) {
    for (int c = 0; c < n; ++c) std::swap(M[a * n + c], M[b * n + c]);
  };
  for (int k = 0; k < n; ++k) {
    while (true) {
      int pr = -1, pc = -1;
      for (int r = k; r < n; ++r)
        for (int c = k; c < n; ++c)
          if (M[r * n + c] && (pr < 0 || std::abs(M[r * n + c]) < std::abs(M[pr * n + pc]))) pr = r, pc = c;
      if (pr < 0) throw std::invalid_argument("degenerate form");
      swap_rows(k, pr);
      swap_cols(k, pc);
      bool clean = true;
      i64 piv = M[k * n + k];
      for (int r = k + 1; r < n; ++r) {
        row_op(r, k, M[r * n + k] / piv);
        if (M[r * n + k]) clean = false;
      }
      for (int c = k + 1; c < n; ++c) {
        col_op(c, k, M[k * n + c] / piv);
        if (M[k * n + c]) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int r = k + 1; r < n && bad < 0; ++r)
        for (int c = k + 1; c < n; ++c)
          if (M[r * n + c] % piv) {
            bad = r;
            break;
          }
      if (bad < 0) break;
      for (int c = 0; c < n; ++c) M[k * n + c] += M[bad * n + c];
    }
  }
  DiscriminantGroup D;
  std::vector<std::vector<i64>> cols;
  for (int k = 0; k < n; ++k) {
    i64 d = std::abs(M[k * n + k]);
    if (d == 1) continue;
    D.orders.push_back(d);
    std::vector<i64> v(n);
    for (int r = 0; r < n; ++r) v[r] = V[r * n + k];
    cols.push_back(v);
    D.lifts.push_back(v);
  }
  int m = static_cast<int>(cols.size());
  D.gram.resize(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      D.gram[i * m + j] = Rational(G.inner(cols[i], cols[j])) / Rational(Integer(static_cast<long>(D.orders[i] * D.orders[j])));
  return D;
}

namespace detail {
inline Rational frac_mod(const Rational& x, long m) {
  Integer q = x.get_num() / (x.get_den() * m);
  Rational r = x - Rational(q * m);
  while (r < 0) r += m;
  while (r >= m) r -= m;
  return r;
}
}  // namespace detail

// isomorphism of discriminant quadratic forms q(x) = x^t G x mod 2
inline bool discriminant_forms_isomorphic(const DiscriminantGroup& A, const DiscriminantGroup& B) {
  if (A.size() != B.size()) return false;
  int ma = static_cast<int>(A.orders.size()), mb = static_cast<int>(B.orders.size());
  if (ma == 0) return mb == 0;
  long total = B.size();
  std::vector<std::vector<i64>> elems;
  for (long idx = 0; idx < total; ++idx) {
    std::vector<i64> c(mb);
    long t = idx;
    for (int i = 0; i < mb; ++i) c[i] = t % B.orders[i], t /= static_cast<long>(B.orders[i]);
    elems.push_back(c);
  }
  auto bB = [&](const std::vector<i64>& x, const std::vector<i64>& y) {
    Rational s = 0;
    for (int i = 0; i < mb; ++i)
      for (int j = 0; j < mb; ++j)
        if (x[i] && y[j]) s += Rational(Integer(static_cast<long>(x[i] * y[j]))) * B.gram[i * mb + j];
    return s;
  };
  auto ordB = [&](const std::vector<i64>& x) {
    i64 o = 1;
    for (int i = 0; i < mb; ++i) o = nt::lcm(o, B.orders[i] / std::gcd(B.orders[i], x[i]));
    return o;
  };
  std::vector<int> img(ma);
  std::function<bool(int)> rec = [&](int k) {
    if (k == ma) return true;
    for (int e = 0; e < static_cast<int>(elems.size()); ++e) {
      auto& x = elems[e];
      if (ordB(x) != A.orders[k]) continue;
      if (detail::frac_mod(bB(x, x) - A.gram[k * ma + k], 2) != 0) continue;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j)
        if (detail::frac_mod(bB(elems[img[j]], x) - A.gram[j * ma + k], 1) != 0) ok = false;
      if (!ok) continue;
      img[k] = e;
      if (rec(k + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

// positive definite even forms of equal rank: same genus iff isomorphic discriminant forms
inline bool same_genus(const GramMat& G1, const GramMat& G2) {
  if (G1.n != G2.n || G1.det() != G2.det()) return false;
  return discriminant_forms_isomorphic(discriminant_group(G1), discriminant_group(G2));
}

struct FormClass {
  GramMat gram;
  long e = 1;       // proper automorphisms
  long o_full = 1;  // all automorphisms
  DiscSplit split;
  int genus = 0;    // index into genus list for equal det
};

struct ClassList {
  int n = 0;
  i64 bound = 0;
  std::vector<FormClass> classes;
  long candidates = 0;
};

namespace detail {

inline std::vector<i64> theta_prefix(const GramMat& G, i64 upto) {
  std::vector<i64> t(upto / 2 + 1, 0);
  for (auto& v : short_vectors(G, upto)) ++t[G.norm(v) / 2];
  return t;
}

// greedy-reduced candidates with prod g_ii <= lambda det G <= lambda B
inline void reduced_candidates(int n, i64 B, const Rational& lambda, Budget& budget,
                               const std::function<void(const GramMat&)>& emit) {
  Rational cap = lambda * Rational(Integer(static_cast<long>(B)));
  double steps = 0;
  std::vector<i64> diag(n);
  std::function<void(int, Rational)> rec_diag = [&](int k, Rational prod) {
    if (k == n) {
      std::vector<std::pair<int, int>> slots;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.push_back({i, j});
      IntMat g(n * n, 0);
      for (int i = 0; i < n; ++i) g[i * n + i] = diag[i];
      std::function<void(size_t)> rec_off = [&](size_t s) {
        if (s == slots.size()) {
          if (++steps > budget.max_steps) throw BudgetExceeded("class enumeration", steps, budget.max_steps);
          GramMat G(n, g);
          if (!G.is_positive_definite()) return;
          if (G.det() > B) return;
          emit(G);
          return;
        }
        auto [i, j] = slots[s];
        i64 lim = diag[i] / 2;
        for (i64 v = lim; v >= -lim; --v) {
          g[i * n + j] = g[j * n + i] = v;
          rec_off(s + 1);
        }
        g[i * n + j] = g[j * n + i] = 0;
      };
      rec_off(0);
      return;
    }
    for (i64 a = (k ? diag[k - 1] : 2);; a += 2) {
      Rational np = prod * Rational(Integer(static_cast<long>(a)));
      // remaining entries are at least a
      Rational lower = np;
      for (int r = k + 1; r < n; ++r) lower *= Rational(Integer(static_cast<long>(a)));
      if (lower > cap) break;
      diag[k] = a;
      rec_diag(k + 1, np);
    }
  };
  rec_diag(0, Rational(1));
}

inline Rational hermite_lambda(int n) {
  switch (n) {
    case 1: return 1;
    case 2: return rat(4, 3);
    case 3: return 2;
    case 4: return 4;
    default: throw std::invalid_argument("class enumeration supports n <= 4");
  }
}

}  // namespace detail

// one representative per proper class with det G <= B
inline ClassList enumerate_classes(int n, i64 B, long margin = 1, Budget budget = {}) {
  if (n < 1 || n > 4) throw std::invalid_argument("class enumeration supports 1 <= n <= 4");
  ClassList out;
  out.n = n;
  out.bound = B;
  Rational lambda = detail::hermite_lambda(n) * Rational(margin);
  struct Key {
    Integer det;
    std::vector<i64> theta;
    bool operator<(const Key& o) const { return det != o.det ? det < o.det : theta < o.theta; }
  };
  std::vector<GramMat> cands;
  detail::reduced_candidates(n, B, lambda, budget, [&](const GramMat& G) { cands.push_back(G); });
  out.candidates = static_cast<long>(cands.size());
  std::sort(cands.begin(), cands.end());
  std::map<Key, std::vector<int>> buckets;
  std::vector<GramMat> reps;
  for (auto& G : cands) {
    Key key{G.det(), detail::theta_prefix(G, 8)};
    auto& bucket = buckets[key];
    bool seen = false;
    for (int idx : bucket)
      if (isometry_test(reps[idx], G)) {
        seen = true;
        break;
      }
    if (seen) continue;
    bucket.push_back(static_cast<int>(reps.size()));
    reps.push_back(G);
  }
  std::sort(reps.begin(), reps.end(), [](const GramMat& a, const GramMat& b) {
    Integer da = a.det(), db = b.det();
    return da != db ? da < db : a < b;
  });
  std::map<Integer, std::vector<GramMat>> genus_reps;
  for (auto& G : reps) {
    FormClass c;
    c.gram = G;
    auto ac = automorphism_count(G, 1);
    c.e = ac.proper;
    c.o_full = ac.full;
    if (n % 2 == 0) c.split = disc_split(G);
    auto& gl = genus_reps[G.det()];
    int gi = -1;
    for (int k = 0; k < static_cast<int>(gl.size()) && gi < 0; ++k)
      if (same_genus(gl[k], G)) gi = k;
    if (gi < 0) {
      gi = static_cast<int>(gl.size());
      gl.push_back(G);
    }
    c.genus = gi;
    out.classes.push_back(c);
  }
  return out;
}

// classes of the list lying in the genus of G
inline std::vector<FormClass> genus_classes(const ClassList& L, const GramMat& G) {
  std::vector<FormClass> out;
  for (auto& c : L.classes)
    if (c.gram.n == G.n && c.gram.det() == G.det() && same_genus(c.gram, G)) out.push_back(c);
  return out;
}

inline Rational genus_mass_from_classes(const ClassList& L, const GramMat& G) {
  Rational m = 0;
  for (auto& c : genus_classes(L, G)) m += rat(1, c.e);
  return m;
}

}  // namespace kmlift
