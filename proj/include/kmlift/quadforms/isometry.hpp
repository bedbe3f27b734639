#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "kmlift/quadforms/reduce.hpp"

namespace kmlift {

namespace detail {

// Enumerate U (columns u_i) with U^t G1 U = G2; visit returns false to stop.
inline void isometry_search(const GramMat& G1, const GramMat& G2, const std::function<bool(const IntMat&)>& visit) {
  int n = G1.n;
  i64 maxd = 0;
  for (int i = 0; i < n; ++i) maxd = std::max(maxd, G2.at(i, i));
  auto by = vectors_by_norm(G1, maxd);
  std::vector<const std::vector<std::vector<i64>>*> cand(n, nullptr);
  for (int i = 0; i < n; ++i) {
    auto it = by.find(G2.at(i, i));
    if (it == by.end()) return;
    cand[i] = &it->second;
  }
  std::vector<const std::vector<i64>*> cols(n);
  bool stop = false;
  std::function<void(int)> rec = [&](int k) {
    if (stop) return;
    if (k == n) {
      IntMat U(n * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) U[i * n + j] = (*cols[j])[i];
      if (!visit(U)) stop = true;
      return;
    }
    for (auto& v : *cand[k]) {
      bool ok = true;
      for (int j = 0; j < k && ok; ++j)
        if (G1.inner(*cols[j], v) != G2.at(j, k)) ok = false;
      if (!ok) continue;
      cols[k] = &v;
      rec(k + 1);
      if (stop) return;
    }
  };
  rec(0);
}

}  // namespace detail

// proper isometry U (det 1) with G1[U] = G2, if any
inline std::optional<IntMat> isometry_test(const GramMat& G1, const GramMat& G2) {
  if (G1.n != G2.n || G1.det() != G2.det()) return std::nullopt;
  std::optional<IntMat> found;
  detail::isometry_search(G1, G2, [&](const IntMat& U) {
    if (det_exact(U, G1.n) == 1) {
      found = U;
      return false;
    }
    return true;
  });
  return found;
}

struct AutCount {
  long proper = 0;
  long full = 0;
};

// automorphisms congruent to 1 mod N (N = 1: all)
inline AutCount automorphism_count(const GramMat& G, i64 N = 1) {
  AutCount c;
  int n = G.n;
  detail::isometry_search(G, G, [&](const IntMat& U) {
    if (N > 1)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (nt::mod(U[i * n + j] - (i == j ? 1 : 0), N) != 0) return true;
    ++c.full;
    if (det_exact(U, n) == 1) ++c.proper;
    return true;
  });
  return c;
}

// all integral automorphisms (both determinants)
inline std::vector<IntMat> automorphism_group(const GramMat& G) {
  std::vector<IntMat> out;
  detail::isometry_search(G, G, [&](const IntMat& U) {
    out.push_back(U);
    return true;
  });
  return out;
}

}  // namespace kmlift
