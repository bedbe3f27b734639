#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "kmlift/quadforms/gram.hpp"

namespace kmlift {

struct Reduced {
  GramMat gram;
  IntMat U;  // gram = input[U], det U = 1
};

inline bool is_greedy_reduced(const GramMat& G) {
  int n = G.n;
  for (int i = 0; i + 1 < n; ++i)
    if (G.at(i, i) > G.at(i + 1, i + 1)) return false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (2 * std::abs(G.at(i, j)) > G.at(i, i)) return false;
  return true;
}

// sorted diagonal and |2 g_ij| <= g_ii, keeping the transformation proper
inline Reduced greedy_reduce(const GramMat& G0) {
  if (!G0.is_positive_definite()) throw std::invalid_argument("reduction needs a positive definite form");
  int n = G0.n;
  IntMat U = identity_mat(n);
  GramMat G = G0;
  auto apply = [&](const IntMat& V) {
    U = mat_mul(U, V, n);
    G = G.transform(V);
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j || 2 * std::abs(G.at(i, j)) <= G.at(i, i)) continue;
        // b_j -= q b_i strictly lowers g_jj
        i64 q = static_cast<i64>(std::llround(static_cast<double>(G.at(i, j)) / static_cast<double>(G.at(i, i))));
        IntMat V = identity_mat(n);
        V[i * n + j] = -q;
        apply(V);
        changed = true;
      }
    for (int i = 0; i + 1 < n; ++i)
      if (G.at(i, i) > G.at(i + 1, i + 1)) {
        IntMat V = identity_mat(n);
        V[i * n + i] = V[(i + 1) * n + i + 1] = 0;
        V[(i + 1) * n + i] = 1;
        V[i * n + i + 1] = -1;
        apply(V);
        changed = true;
      }
  }
  return {G, U};
}

inline Reduced minkowski_reduce(const GramMat& G) { return greedy_reduce(G); }

// all x with x^t G x <= bound (both signs), by Fincke-Pohst
inline std::vector<std::vector<i64>> short_vectors(const GramMat& G, i64 bound, bool include_zero = false) {
  int n = G.n;
  std::vector<double> q(n * n, 0.0);
  {
    std::vector<double> a(n * n);
    for (int i = 0; i < n * n; ++i) a[i] = static_cast<double>(G.g[i]);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) q[i * n + j] = a[i * n + j];
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) q[j * n + i] = q[i * n + j], q[i * n + j] /= q[i * n + i];
      for (int k = i + 1; k < n; ++k)
        for (int l = k; l < n; ++l) q[k * n + l] -= q[k * n + i] * q[i * n + l];
    }
  }
  std::vector<std::vector<i64>> out;
  std::vector<i64> x(n, 0);
  double slack = 1e-6 * (1 + static_cast<double>(bound));
  std::function<void(int, double)> rec = [&](int i, double remaining) {
    if (i < 0) {
      bool zero = std::all_of(x.begin(), x.end(), [](i64 v) { return v == 0; });
      if (zero && !include_zero) return;
      if (G.norm(x) <= bound) out.push_back(x);
      return;
    }
    double c = 0;
    for (int j = i + 1; j < n; ++j) c += q[i * n + j] * static_cast<double>(x[j]);
    double r = std::sqrt(std::max(0.0, remaining + slack) / q[i * n + i]);
    i64 lo = static_cast<i64>(std::ceil(-c - r)), hi = static_cast<i64>(std::floor(-c + r));
    for (i64 v = lo; v <= hi; ++v) {
      x[i] = v;
      double t = static_cast<double>(v) + c;
      rec(i - 1, remaining - q[i * n + i] * t * t);
    }
    x[i] = 0;
  };
  rec(n - 1, static_cast<double>(bound));
  return out;
}

// vectors bucketed by norm, norms up to bound
inline std::map<i64, std::vector<std::vector<i64>>> vectors_by_norm(const GramMat& G, i64 bound) {
  std::map<i64, std::vector<std::vector<i64>>> by;
  for (auto& v : short_vectors(G, bound)) by[G.norm(v)].push_back(v);
  return by;
}

}  // namespace kmlift
