#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmlift/exactalg/numtheory.hpp"
#include "kmlift/exactalg/rational.hpp"

namespace kmlift {

using IntMat = std::vector<i64>;  // row-major square matrix

inline IntMat identity_mat(int n) {
  IntMat U(n * n, 0);
  for (int i = 0; i < n; ++i) U[i * n + i] = 1;
  return U;
}

inline IntMat mat_mul(const IntMat& A, const IntMat& B, int n) {
  IntMat C(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (!A[i * n + k]) continue;
      for (int j = 0; j < n; ++j) C[i * n + j] += A[i * n + k] * B[k * n + j];
    }
  return C;
}

inline IntMat transpose(const IntMat& A, int n) {
  IntMat B(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B[j * n + i] = A[i * n + j];
  return B;
}

// exact determinant by fraction-free elimination
inline Integer det_exact(const IntMat& A, int n) {
  if (n == 0) return 1;
  std::vector<Integer> M(A.begin(), A.end());
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (M[k * n + k] == 0) {
      int sw = -1;
      for (int r = k + 1; r < n; ++r)
        if (M[r * n + k] != 0) {
          sw = r;
          break;
        }
      if (sw < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(M[k * n + c], M[sw * n + c]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) M[i * n + j] = (M[i * n + j] * M[k * n + k] - M[i * n + k] * M[k * n + j]) / prev;
    prev = M[k * n + k];
  }
  return sign * M[n * n - 1];
}

// Gram matrix G = 2T of a half-integral form T
struct GramMat {
  int n = 0;
  IntMat g;

  GramMat() = default;
  GramMat(int n_, IntMat g_) : n(n_), g(std::move(g_)) {
    if (static_cast<int>(g.size()) != n * n) throw std::invalid_argument("Gram matrix has wrong number of entries");
    for (int i = 0; i < n; ++i) {
      if (g[i * n + i] % 2) throw std::invalid_argument("Gram matrix diagonal must be even");
      for (int j = 0; j < i; ++j)
        if (g[i * n + j] != g[j * n + i]) throw std::invalid_argument("Gram matrix must be symmetric");
    }
  }

  static GramMat diag(const std::vector<i64>& d) {
    int n = static_cast<int>(d.size());
    IntMat g(n * n, 0);
    for (int i = 0; i < n; ++i) g[i * n + i] = d[i];
    return GramMat(n, g);
  }

  i64 at(int i, int j) const { return g[i * n + j]; }
  Integer det() const { return det_exact(g, n); }
  // det T = det G / 2^n
  Rational det_T() const { return Rational(det()) / rpow(2, n); }

  bool is_positive_definite() const {
    for (int k = 1; k <= n; ++k) {
      IntMat minor(k * k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) minor[i * k + j] = g[i * n + j];
      if (det_exact(minor, k) <= 0) return false;
    }
    return true;
  }

  // G[U] = U^t G U
  GramMat transform(const IntMat& U) const { return GramMat(n, mat_mul(mat_mul(transpose(U, n), g, n), U, n)); }

  GramMat orthogonal_sum(const GramMat& o) const {
    int m = n + o.n;
    IntMat h(m * m, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h[i * m + j] = at(i, j);
    for (int i = 0; i < o.n; ++i)
      for (int j = 0; j < o.n; ++j) h[(n + i) * m + n + j] = o.at(i, j);
    return GramMat(m, h);
  }

  GramMat scaled(i64 c) const {
    IntMat h = g;
    for (auto& x : h) x *= c;
    return GramMat(n, h);
  }

  i64 norm(const std::vector<i64>& x) const { return inner(x, x); }
  i64 inner(const std::vector<i64>& x, const std::vector<i64>& y) const {
    i64 s = 0;
    for (int i = 0; i < n; ++i) {
      if (!x[i]) continue;
      i64 t = 0;
      for (int j = 0; j < n; ++j) t += g[i * n + j] * y[j];
      s += x[i] * t;
    }
    return s;
  }

  bool operator==(const GramMat& o) const { return n == o.n && g == o.g; }
  bool operator<(const GramMat& o) const {
    if (n != o.n) return n < o.n;
    // diagonal first, then the upper triangle row by row
    for (int i = 0; i < n; ++i)
      if (at(i, i) != o.at(i, i)) return at(i, i) < o.at(i, i);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (at(i, j) != o.at(i, j)) return at(i, j) > o.at(i, j);
    return false;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n; ++i) {
      if (i) os << ";";
      for (int j = 0; j < n; ++j) os << (j ? "," : "") << at(i, j);
    }
    os << "]";
    return os.str();
  }
};

inline GramMat parse_gram(const std::string& s) {
  std::vector<i64> vals;
  std::string tok;
  for (char c : s) {
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      tok += c;
    } else if (!tok.empty()) {
      vals.push_back(std::stoll(tok));
      tok.clear();
    }
  }
  if (!tok.empty()) vals.push_back(std::stoll(tok));
  int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(vals.size()))));
  if (n * n != static_cast<int>(vals.size())) throw std::invalid_argument("Gram matrix needs n*n entries: " + s);
  return GramMat(n, vals);
}

namespace lattices {
inline GramMat A2() { return GramMat(2, {2, 1, 1, 2}); }
inline GramMat D4() { return GramMat(4, {2, 0, 0, -1, 0, 2, 0, -1, 0, 0, 2, -1, -1, -1, -1, 2}); }
inline GramMat A2A2() { return A2().orthogonal_sum(A2()); }
inline GramMat twice_identity(int n) { return GramMat::diag(std::vector<i64>(n, 2)); }
}  // namespace lattices

}  // namespace kmlift
