#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace kmlift {

// Dense matrix over a field, row-major rows.
template <class F>
using DenseMat = std::vector<std::vector<F>>;

// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<int> rref(DenseMat<F>& M) {
  std::vector<int> pivots;
  if (M.empty()) return pivots;
  int rows = static_cast<int>(M.size()), cols = static_cast<int>(M[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!(M[i][c] == F(0))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[piv], M[r]);
    F inv = F(1) / M[r][c];
    for (int j = c; j < cols; ++j) M[r][j] = M[r][j] * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || M[i][c] == F(0)) continue;
      F f = M[i][c];
      for (int j = c; j < cols; ++j) M[i][j] = M[i][j] - f * M[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// basis of {x : M x = 0}
template <class F>
std::vector<std::vector<F>> nullspace(DenseMat<F> M, int cols) {
  auto pivots = rref(M);
  std::vector<bool> is_piv(cols, false);
  for (int c : pivots) is_piv[c] = true;
  std::vector<std::vector<F>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_piv[free]) continue;
    std::vector<F> v(cols, F(0));
    v[free] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F(0) - M[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// unique solution of M x = b, nullopt if singular or inconsistent
template <class F>
std::optional<std::vector<F>> solve_unique(const DenseMat<F>& M, const std::vector<F>& b) {
  if (M.size() != b.size()) throw std::invalid_argument("system size mismatch");
  if (M.empty()) return std::nullopt;
  int cols = static_cast<int>(M[0].size());
  DenseMat<F> A = M;
  for (std::size_t i = 0; i < A.size(); ++i) A[i].push_back(b[i]);
  auto pivots = rref(A);
  if (static_cast<int>(pivots.size()) != cols || pivots.back() != cols - 1) return std::nullopt;
  std::vector<F> x(cols);
  for (int i = 0; i < cols; ++i) x[i] = A[i][cols];
  return x;
}

}  // namespace kmlift
