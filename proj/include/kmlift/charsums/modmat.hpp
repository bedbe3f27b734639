#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmlift/characters/quadratic.hpp"
#include "kmlift/exactalg/numtheory.hpp"

namespace kmlift {

// Symmetric m x m matrix over Z/N, row-major.
struct SymMatModN {
  int m = 0;
  i64 N = 1;
  std::vector<i64> a;

  SymMatModN() = default;
  SymMatModN(int m_, i64 N_) : m(m_), N(N_), a(static_cast<std::size_t>(m_) * m_, 0) {}
  SymMatModN(int m_, i64 N_, const std::vector<i64>& entries) : m(m_), N(N_), a(entries) {
    if (a.size() != static_cast<std::size_t>(m) * m) throw std::invalid_argument("matrix size mismatch");
    for (auto& x : a) x = nt::mod(x, N);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < i; ++j)
        if (at(i, j) != at(j, i)) throw std::invalid_argument("matrix is not symmetric");
  }

  static SymMatModN diag(i64 N, const std::vector<i64>& d) {
    SymMatModN s(static_cast<int>(d.size()), N);
    for (int i = 0; i < s.m; ++i) s.set(i, i, d[i]);
    return s;
  }
  static SymMatModN identity(int m, i64 N) { return diag(N, std::vector<i64>(m, 1)); }

  i64 at(int i, int j) const { return a[i * m + j]; }
  void set(int i, int j, i64 v) {
    v = nt::mod(v, N);
    a[i * m + j] = v;
    a[j * m + i] = v;
  }

  bool is_diagonal() const {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j && at(i, j) != 0) return false;
    return true;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < m; ++i) {
      os << (i ? ";" : "");
      for (int j = 0; j < m; ++j) os << (j ? "," : "") << at(i, j);
    }
    os << "] mod " << N;
    return os.str();
  }
};

// Dense m x m determinant over F_p.
inline i64 det_mod_p(std::vector<i64> M, int m, i64 p) {
  i64 det = 1;
  for (int c = 0; c < m; ++c) {
    int piv = -1;
    for (int r = c; r < m; ++r)
      if (nt::mod(M[r * m + c], p) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int k = 0; k < m; ++k) std::swap(M[piv * m + k], M[c * m + k]);
      det = p - det;
    }
    i64 pv = nt::mod(M[c * m + c], p);
    det = nt::mulmod(det, pv, p);
    i64 inv = nt::invmod(pv, p);
    for (int r = c + 1; r < m; ++r) {
      i64 f = nt::mulmod(nt::mod(M[r * m + c], p), inv, p);
      if (!f) continue;
      for (int k = c; k < m; ++k) M[r * m + k] = nt::mod(M[r * m + k] - f * M[c * m + k], p);
    }
  }
  return nt::mod(det, p);
}

inline i64 det_mod_p(const SymMatModN& S) { return det_mod_p(S.a, S.m, S.N); }

// Diagonal form of S over F_p: V^t S V = diag(d), det V = 1.
struct DiagForm {
  std::vector<i64> d;
  std::vector<i64> V;  // m x m, row-major
};

inline DiagForm diagonalize_mod_p(const SymMatModN& S) {
  int m = S.m;
  i64 p = S.N;
  std::vector<i64> A = S.a, V(m * m, 0);
  for (int i = 0; i < m; ++i) V[i * m + i] = 1;
  auto col_add = [&](int dst, int src, i64 f) {  // e_dst += f e_src
    for (int k = 0; k < m; ++k) V[k * m + dst] = nt::mod(V[k * m + dst] + f * V[k * m + src], p);
    for (int k = 0; k < m; ++k) A[k * m + dst] = nt::mod(A[k * m + dst] + f * A[k * m + src], p);
    for (int k = 0; k < m; ++k) A[dst * m + k] = nt::mod(A[dst * m + k] + f * A[src * m + k], p);
  };
  auto swap_basis = [&](int i, int j) {
    for (int k = 0; k < m; ++k) std::swap(V[k * m + i], V[k * m + j]);
    for (int k = 0; k < m; ++k) std::swap(A[k * m + i], A[k * m + j]);
    for (int k = 0; k < m; ++k) std::swap(A[i * m + k], A[j * m + k]);
  };
  for (int c = 0; c < m; ++c) {
    if (A[c * m + c] == 0) {
      int found = -1;
      for (int r = c + 1; r < m; ++r)
        if (A[r * m + r] != 0) {
          found = r;
          break;
        }
      if (found >= 0) {
        swap_basis(c, found);
      } else {
        for (int r = c + 1; r < m && found < 0; ++r)
          if (A[c * m + r] != 0) found = r;
        if (found < 0) continue;
        col_add(c, found, 1);  // 2 a_{c,r} != 0 since p odd
      }
    }
    i64 inv = nt::invmod(A[c * m + c], p);
    for (int r = c + 1; r < m; ++r) {
      i64 f = nt::mulmod(A[r * m + c], inv, p);
      if (f) col_add(r, c, p - f);
    }
  }
  DiagForm out;
  for (int i = 0; i < m; ++i) out.d.push_back(A[i * m + i]);
  i64 dv = det_mod_p(V, m, p);
  if (dv != 1) {
    // rescale the first basis vector by dv^{-1}
    i64 s = nt::invmod(dv, p);
    for (int k = 0; k < m; ++k) V[k * m] = nt::mulmod(V[k * m], s, p);
    out.d[0] = nt::mulmod(out.d[0], nt::mulmod(s, s, p), p);
  }
  out.V = V;
  return out;
}

// rank and determinant of the nondegenerate part S_0 (S ~ S_0 + O)
struct RankDet {
  int rank;
  i64 det0;
};

inline RankDet rank_det_mod_p(const SymMatModN& S) {
  auto D = diagonalize_mod_p(S);
  RankDet r{0, 1};
  for (i64 x : D.d)
    if (x) {
      ++r.rank;
      r.det0 = nt::mulmod(r.det0, x, S.N);
    }
  return r;
}

// chi(S) = ((-1)^{m/2} det S / p) for m even
inline int chi_of(const SymMatModN& S) {
  if (S.m % 2) throw std::domain_error("chi(S) needs even size");
  i64 d = det_mod_p(S);
  return legendre((S.m / 2) % 2 ? -d : d, S.N);
}

inline SymMatModN orthogonal_sum(const SymMatModN& A, const SymMatModN& B) {
  if (A.N != B.N) throw std::invalid_argument("moduli differ");
  SymMatModN C(A.m + B.m, A.N);
  for (int i = 0; i < A.m; ++i)
    for (int j = 0; j < A.m; ++j) C.a[i * C.m + j] = A.at(i, j);
  for (int i = 0; i < B.m; ++i)
    for (int j = 0; j < B.m; ++j) C.a[(A.m + i) * C.m + A.m + j] = B.at(i, j);
  return C;
}

inline SymMatModN negate(const SymMatModN& A) {
  SymMatModN B = A;
  for (auto& x : B.a) x = nt::mod(-x, A.N);
  return B;
}

}  // namespace kmlift
