#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmlift/characters/quadratic.hpp"
#include "kmlift/quadforms/classes.hpp"

namespace kmlift {

// 1 square, -1 unramified nonsquare, 0 ramified
inline int xi_tilde(i64 p, const Rational& c) {
  if (c == 0) throw std::invalid_argument("xi of zero");
  int v = nt::valuation(c, p);
  if (v % 2) return 0;
  Rational u = c / rpow(p, v);
  if (p != 2) return legendre(u, p);
  i64 u8 = nt::reduce_mod(u, 8);
  if (u8 == 1) return 1;
  if (u8 == 5) return -1;
  return 0;
}

inline i64 least_nonresidue(i64 p) {
  for (i64 a = 2; a < p; ++a)
    if (legendre(a, p) == -1) return a;
  throw std::invalid_argument("no nonresidue");
}

struct JordanBlock {
  int scale = 0;  // p^scale
  int dim = 0;
  int det_class = 1;  // Legendre symbol of the unit determinant
  bool operator==(const JordanBlock& o) const { return scale == o.scale && dim == o.dim && det_class == o.det_class; }
  bool operator<(const JordanBlock& o) const {
    if (scale != o.scale) return scale < o.scale;
    if (dim != o.dim) return dim < o.dim;
    return det_class < o.det_class;
  }
};

struct JordanSymbol {
  i64 p = 3;
  std::vector<JordanBlock> blocks;

  int size() const {
    int n = 0;
    for (auto& b : blocks) n += b.dim;
    return n;
  }
  int det_valuation() const {
    int v = 0;
    for (auto& b : blocks) v += b.scale * b.dim;
    return v;
  }
  // Legendre symbol of the unit part of det
  int det_class() const {
    int c = 1;
    for (auto& b : blocks) c *= b.det_class;
    return c;
  }
  bool operator==(const JordanSymbol& o) const { return p == o.p && blocks == o.blocks; }
  bool operator<(const JordanSymbol& o) const { return blocks < o.blocks; }

  std::string to_string() const {
    std::string s;
    for (auto& b : blocks) {
      if (!s.empty()) s += " ";
      s += std::to_string(p) + "^" + std::to_string(b.scale) + ":" + std::to_string(b.dim) + (b.det_class > 0 ? "+" : "-");
    }
    return s;
  }
};

// diagonal entries of G over Z_(p), p odd
inline std::vector<Rational> padic_diagonal(const GramMat& G, i64 p) {
  if (p == 2) throw std::invalid_argument("dyadic Jordan decomposition is not supported");
  int n = G.n;
  std::vector<Rational> M(G.g.begin(), G.g.end());
  std::vector<Rational> out;
  auto val = [&](const Rational& x) { return x == 0 ? 1 << 30 : nt::valuation(x, p); };
  for (int k = 0; k < n; ++k) {
    int best = 1 << 30, bi = -1, bj = -1;
    for (int i = k; i < n; ++i)
      for (int j = i; j < n; ++j) {
        int v = val(M[i * n + j]);
        if (v < best || (v == best && i == j && bi != bj)) best = v, bi = i, bj = j;
      }
    if (bi < 0) throw std::invalid_argument("degenerate form");
    if (bi != bj) {
      // e_bi += e_bj raises the diagonal valuation to the minimum
      for (int c = 0; c < n; ++c) M[bi * n + c] += M[bj * n + c];
      for (int r = 0; r < n; ++r) M[r * n + bi] += M[r * n + bj];
    }
    for (int c = 0; c < n; ++c) std::swap(M[k * n + c], M[bi * n + c]);
    for (int r = 0; r < n; ++r) std::swap(M[r * n + k], M[r * n + bi]);
    Rational piv = M[k * n + k];
    out.push_back(piv);
    for (int i = k + 1; i < n; ++i) {
      Rational c = M[i * n + k] / piv;
      for (int j = k; j < n; ++j) M[i * n + j] -= c * M[k * n + j];
      for (int j = k; j < n; ++j) M[j * n + i] -= c * M[j * n + k];
    }
  }
  return out;
}

inline JordanSymbol jordan_from_diagonal(const std::vector<Rational>& d, i64 p) {
  std::map<int, std::pair<int, int>> by;
  for (auto& x : d) {
    int v = nt::valuation(x, p);
    auto& e = by.try_emplace(v, 0, 1).first->second;
    ++e.first;
    e.second *= legendre(x / rpow(p, v), p);
  }
  JordanSymbol J;
  J.p = p;
  for (auto& [v, e] : by) J.blocks.push_back({v, e.first, e.second});
  return J;
}

inline JordanSymbol jordan_decompose(const GramMat& G, i64 p) { return jordan_from_diagonal(padic_diagonal(G, p), p); }

// diagonal even Gram matrix with the given Jordan symbol
inline GramMat jordan_realize(const JordanSymbol& J) {
  i64 p = J.p, u = least_nonresidue(p);
  std::vector<i64> d;
  for (auto& b : J.blocks) {
    i64 s = nt::ipow(p, b.scale);
    // entries 2 s, last one 2 s u when needed
    int cls = legendre(nt::powmod(2, b.dim, p), p);
    for (int i = 0; i + 1 < b.dim; ++i) d.push_back(2 * s);
    d.push_back(2 * s * (cls == b.det_class ? 1 : u));
  }
  return GramMat::diag(d);
}

// GL_n(Z_p)-classes with (-1)^{n/2} det = p^{2i} d0 mod unit squares, nu_p(det) <= max_val
inline std::vector<JordanSymbol> enumerate_zp_classes(int n, i64 p, const Rational& d0, int max_val) {
  if (p == 2) throw std::invalid_argument("dyadic class enumeration is not supported");
  if (n % 2) throw std::invalid_argument("class enumeration needs even size");
  int v0 = nt::valuation(d0, p);
  if (v0 > 1 || v0 < 0) throw std::invalid_argument("d0 must have valuation 0 or 1");
  int target = legendre(d0 / rpow(p, v0), p);
  int sign = legendre((n / 2) % 2 ? p - 1 : 1, p);
  std::vector<JordanSymbol> out;
  std::vector<JordanBlock> cur;
  std::function<void(int, int, int)> rec = [&](int scale, int left, int val) {
    if (left == 0) {
      if (val % 2 != v0) return;
      JordanSymbol J;
      J.p = p;
      J.blocks = cur;
      if (sign * J.det_class() != target) return;
      out.push_back(J);
      return;
    }
    if (val + scale * left > max_val && scale > 0) return;
    for (int dim = 1; dim <= left; ++dim) {
      if (val + scale * dim > max_val) break;
      for (int cls : {1, -1}) {
        cur.push_back({scale, dim, cls});
        for (int next = scale + 1; next <= max_val + 1; ++next) {
          if (left - dim == 0) {
            rec(next, 0, val + scale * dim);
            break;
          }
          rec(next, left - dim, val + scale * dim);
        }
        cur.pop_back();
      }
    }
  };
  for (int first = 0; first <= max_val; ++first) rec(first, n, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace kmlift
