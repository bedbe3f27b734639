#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmlift/charsums/counts.hpp"
#include "kmlift/exactalg/cyclo.hpp"
#include "kmlift/exactalg/laurent.hpp"
#include "kmlift/exactalg/poly.hpp"
#include "kmlift/exactalg/quadsurd.hpp"
#include "kmlift/plocal/density.hpp"

namespace kmlift {

enum class SiegelMode { oracle, interpolation };

inline std::string siegel_mode_name(SiegelMode m) { return m == SiegelMode::oracle ? "oracle" : "interpolation"; }

struct SiegelPoly {
  i64 p = 2;
  int n = 0;
  SiegelMode mode = SiegelMode::oracle;
  RatPoly F;
  int nu_det = 0;   // nu_p(det 2T)
  int xi = 0;       // xi_p(T)
  int nu_f = 0;     // nu_p(f_T)
  int known_terms = 0;  // coefficients of F determined exactly
  bool complete = true;   // all coefficients up to deg F = 2 nu_f known and higher ones vanish
  bool symmetric = true;  // F~(X^-1) = F~(X)
  std::vector<std::string> flags;

  // F~(X) = X^{-nu_f} F(p^{-(n+1)/2} X)
  Laurent<QuadSurd> tilde() const {
    Laurent<QuadSurd> L;
    for (std::size_t j = 0; j < F.coeffs().size(); ++j) {
      if (F[j] == 0) continue;
      L.add(static_cast<int>(j) - nu_f, QuadSurd(F[j]) * QuadSurd::sqrt_prime_power(p, -static_cast<long>(j) * (n + 1)));
    }
    return L;
  }
  // F~ evaluated at X with the symmetric structure kept exact
  template <class T>
  T tilde_at(const T& X) const {
    T s(0);
    auto L = tilde();
    for (auto& [k, c] : L.terms()) {
      T term = T(1);
      if (k >= 0)
        for (int i = 0; i < k; ++i) term = term * X;
      else
        for (int i = 0; i < -k; ++i) term = term / X;
      s = s + T(c) * term;
    }
    return s;
  }
};

namespace detail {

// valuations of the elementary divisors of S over Z/p^J (J for zero)
inline std::vector<int> elementary_valuations(std::vector<i64> S, int n, i64 p, int J) {
  i64 q = nt::ipow(p, J);
  std::vector<int> out;
  auto val = [&](i64 x) {
    x = nt::mod(x, q);
    if (!x) return J;
    int v = 0;
    while (x % p == 0) x /= p, ++v;
    return v;
  };
  std::vector<int> rows(n), colsv(n);
  for (int i = 0; i < n; ++i) rows[i] = colsv[i] = i;
  int size = n;
  std::vector<i64> M = S;
  int m = n;
  while (size > 0) {
    int best = J + 1, br = -1, bc = -1;
    for (int r = 0; r < size; ++r)
      for (int c = 0; c < size; ++c) {
        int v = val(M[r * m + c]);
        if (v < best) best = v, br = r, bc = c;
      }
    if (best >= J) {
      for (int i = 0; i < size; ++i) out.push_back(J);
      break;
    }
    out.push_back(best);
    // move pivot to (0,0) and eliminate
    for (int c = 0; c < size; ++c) std::swap(M[0 * m + c], M[br * m + c]);
    for (int r = 0; r < size; ++r) std::swap(M[r * m + 0], M[r * m + bc]);
    i64 piv = nt::mod(M[0], q);
    i64 pv = nt::ipow(p, best);
    i64 unit = piv / pv;
    i64 uinv = nt::invmod(nt::mod(unit, q), q);
    std::vector<i64> N((size - 1) * (size - 1));
    for (int r = 1; r < size; ++r)
      for (int c = 1; c < size; ++c) {
        // M_rc - M_r0 M_0c / piv, exact since p^best divides M_r0 and M_0c
        i64 a = nt::mod(M[r * m + 0], q) / pv;
        i64 t = nt::mulmod(nt::mulmod(a, uinv, q), nt::mod(M[0 * m + c], q), q);
        N[(r - 1) * (size - 1) + (c - 1)] = nt::mod(M[r * m + c] - t, q);
      }
    M = N;
    --size;
    m = size;
  }
  return out;
}

inline int det_class_xi(const GramMat& G, i64 p) {
  Integer d = G.det();
  if ((G.n / 2) % 2) d = -d;
  return xi_tilde(p, Rational(d));
}

// denominators of b_p: (1 - X) prod (1 - p^{2i} X^2) / (1 - xi p^{n/2} X)
inline RatPoly siegel_factor_num(int n, i64 p) {
  RatPoly f(std::vector<Rational>{1, -1});
  for (int i = 1; i <= n / 2; ++i) {
    std::vector<Rational> c(3, 0);
    c[0] = 1;
    c[2] = -rpow(p, 2 * i);
    f *= RatPoly(c);
  }
  return f;
}

}  // namespace detail

inline SiegelPoly siegel_header(const GramMat& G, i64 p, SiegelMode mode) {
  if (G.n % 2) throw std::invalid_argument("Siegel series needs even size");
  SiegelPoly S;
  S.p = p;
  S.n = G.n;
  S.mode = mode;
  S.nu_det = nt::valuation(G.det(), p);
  S.xi = detail::det_class_xi(G, p);
  S.nu_f = nt::valuation(disc_split(G).f, p);
  return S;
}

inline void siegel_audit(SiegelPoly& S) {
  int deg = 2 * S.nu_f;
  S.complete = S.known_terms > deg;
  if (S.known_terms <= deg) S.flags.push_back("only " + std::to_string(S.known_terms) + " coefficients known, degree " + std::to_string(deg));
  for (std::size_t j = deg + 1; j < S.F.coeffs().size(); ++j)
    if (S.F[j] != 0) {
      S.flags.push_back("nonzero coefficient beyond degree " + std::to_string(deg));
      S.complete = false;
    }
  if (S.F[0] != 1) S.flags.push_back("constant term is not 1");
  if (S.complete) {
    auto L = S.tilde();
    S.symmetric = (L.inverted() == L);
    if (!S.symmetric) S.flags.push_back("functional equation fails");
  }
}

// exponential sums A_j over S_n(p^{-J} Z_p)/S_n(Z_p), truncated series extraction
inline SiegelPoly siegel_series_oracle(const GramMat& G, i64 p, int J, const Budget& budget = {}) {
  SiegelPoly S = siegel_header(G, p, SiegelMode::oracle);
  int n = G.n, m = n * (n + 1) / 2;
  i64 q = nt::ipow(p, J);
  double total = std::pow(static_cast<double>(q), m);
  budget.check("Siegel series oracle", total);
  std::vector<std::vector<long>> hist(n * J + 1, std::vector<long>(q, 0));
  std::vector<i64> Smat(n * n), e(m, 0);
  std::vector<std::pair<int, int>> pos;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) pos.push_back({i, j});
  for (long idx = 0; idx < static_cast<long>(total); ++idx) {
    long t = idx;
    i64 phase = 0;
    for (int k = 0; k < m; ++k) {
      e[k] = t % q;
      t /= q;
      auto [i, j] = pos[k];
      Smat[i * n + j] = Smat[j * n + i] = e[k];
      phase += (i == j ? G.at(i, i) / 2 : G.at(i, j)) * e[k];
    }
    auto vals = detail::elementary_valuations(Smat, n, p, J);
    int nu = 0;
    for (int v : vals) nu += J - v;
    ++hist[nu][nt::mod(phase, q)];
  }
  std::vector<Rational> b(J + 1, 0);
  for (int j = 0; j <= J; ++j) b[j] = CycloNum::from_exponent_counts(static_cast<int>(q), hist[j]).to_rational();
  RatPoly bp(b);
  RatPoly num = bp * RatPoly(std::vector<Rational>{1, Rational(-S.xi) * rpow(p, n / 2)});
  // divide by (1 - X) prod (1 - p^{2i} X^2) as power series mod X^{J+1}
  std::vector<Rational> c(J + 1, 0);
  auto den = detail::siegel_factor_num(n, p);
  for (int j = 0; j <= J; ++j) {
    Rational s = num[j];
    for (int i = 1; i <= j; ++i) s -= den[i] * c[j - i];
    c[j] = s;
  }
  S.F = RatPoly(c);
  S.known_terms = J + 1;
  siegel_audit(S);
  return S;
}

namespace detail {

inline i64 isotropic_nonzero(int w, int chi, i64 p) {
  if (w <= 0) return 0;
  if (w % 2) return nt::ipow(p, w - 1) - 1;
  return nt::ipow(p, w - 1) + chi * (nt::ipow(p, w / 2) - nt::ipow(p, w / 2 - 1)) - 1;
}

// #{x in M_{2k,n}(F_p) of rank n with H_k[x] = Tbar}, H_k = [[0,1],[1,0]]
inline Rational primitive_count_hyperbolic(const SymMatModN& Tbar, int k) {
  i64 p = Tbar.N;
  int n = Tbar.m;
  auto D = diagonalize_mod_p(Tbar);
  std::vector<i64> nz;
  for (auto x : D.d)
    if (x) nz.push_back(x);
  int r = static_cast<int>(nz.size()), s = n - r;
  Rational cnt = 1;
  SymMatModN H(2 * k, p);
  for (int i = 0; i < k; ++i) H.set(i, k + i, 1);
  i64 detU = 1;
  if (r > 0) {
    cnt = count_A_closed(H, SymMatModN::diag(p, nz));
    for (auto x : nz) detU = nt::mulmod(detU, x, p);
  }
  int w = 2 * k - r;
  i64 detW = nt::mulmod(nt::mod(k % 2 ? -1 : 1, p), nt::invmod(detU, p), p);
  int chi = 0;
  if (w % 2 == 0) chi = legendre((w / 2) % 2 ? nt::mod(-detW, p) : detW, p);
  for (int i = 0; i < s; ++i) cnt *= Rational(Integer(static_cast<long>(nt::ipow(p, i) * isotropic_nonzero(w - 2 * i, chi, p))));
  return cnt;
}

// integer lattice basis of the rows of gens (full rank n)
inline std::vector<std::vector<i64>> lattice_basis(std::vector<std::vector<i64>> rows, int n) {
  std::vector<std::vector<i64>> basis;
  for (int col = 0; col < n; ++col) {
    while (true) {
      int piv = -1;
      for (int r = 0; r < static_cast<int>(rows.size()); ++r)
        if (rows[r][col] && (piv < 0 || std::abs(rows[r][col]) < std::abs(rows[piv][col]))) piv = r;
      if (piv < 0) throw std::invalid_argument("lattice is not full rank");
      bool done = true;
      for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        if (r == piv || !rows[r][col]) continue;
        i64 qt = rows[r][col] / rows[piv][col];
        for (int c = 0; c < n; ++c) rows[r][c] -= qt * rows[piv][c];
        if (rows[r][col]) done = false;
      }
      if (done) {
        basis.push_back(rows[piv]);
        rows.erase(rows.begin() + piv);
        break;
      }
    }
  }
  return basis;
}

struct Overlattice {
  GramMat gram;
  int log_index = 0;
};

// even overlattices L' of Z^n inside the p-part of the dual (p odd)
inline std::vector<Overlattice> p_overlattices(const GramMat& G, i64 p) {
  int n = G.n;
  auto D = discriminant_group(G);
  std::vector<std::vector<i64>> gens;
  std::vector<int> vals;
  int mx = 0;
  for (std::size_t i = 0; i < D.orders.size(); ++i) {
    int v = nt::valuation(D.orders[i], p);
    if (!v) continue;
    vals.push_back(v);
    mx = std::max(mx, v);
    gens.push_back(D.lifts[i]);
  }
  i64 P = nt::ipow(p, mx);
  auto key = [&](std::vector<i64> x) {
    for (auto& y : x) y = nt::mod(y, P);
    return x;
  };
  // numerators of elements over P
  std::vector<std::vector<i64>> elems;
  std::map<std::vector<i64>, int> id;
  {
    int g = static_cast<int>(gens.size());
    std::vector<i64> c(g, 0);
    std::function<void(int)> rec = [&](int k) {
      if (k == g) {
        std::vector<i64> x(n, 0);
        for (int i = 0; i < g; ++i) {
          i64 scale = P / nt::ipow(p, vals[i]);
          for (int r = 0; r < n; ++r) x[r] += c[i] * gens[i][r] * scale;
        }
        x = key(x);
        if (!id.count(x)) {
          id[x] = static_cast<int>(elems.size());
          elems.push_back(x);
        }
        return;
      }
      for (i64 t = 0; t < nt::ipow(p, vals[k]); ++t) {
        c[k] = t;
        rec(k + 1);
      }
    };
    rec(0);
  }
  i64 P2 = P * P;
  auto bil = [&](int a, int b) { return nt::mod(G.inner(elems[a], elems[b]), P2); };
  int E = static_cast<int>(elems.size());
  auto add = [&](int a, int b) {
    std::vector<i64> x(n);
    for (int r = 0; r < n; ++r) x[r] = elems[a][r] + elems[b][r];
    return id.at(key(x));
  };
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  queue.push_back({id.at(std::vector<i64>(n, 0))});
  seen.insert(queue[0]);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    auto H = queue[qi];
    for (int x = 0; x < E; ++x) {
      if (std::binary_search(H.begin(), H.end(), x)) continue;
      if (bil(x, x) != 0) continue;
      bool orth = true;
      for (int h : H)
        if (bil(x, h) != 0) {
          orth = false;
          break;
        }
      if (!orth) continue;
      // closure of H + <x>
      std::set<int> S(H.begin(), H.end());
      std::vector<int> frontier(H.begin(), H.end());
      int mult = x;
      std::vector<int> cyc;
      do {
        cyc.push_back(mult);
        mult = add(mult, x);
      } while (std::find(cyc.begin(), cyc.end(), mult) == cyc.end());
      for (int h : H)
        for (int c : cyc) S.insert(add(h, c));
      std::vector<int> K(S.begin(), S.end());
      if (seen.insert(K).second) queue.push_back(K);
    }
  }
  std::vector<Overlattice> out;
  for (auto& H : queue) {
    std::vector<std::vector<i64>> rows;
    for (int r = 0; r < n; ++r) {
      std::vector<i64> e(n, 0);
      e[r] = P;
      rows.push_back(e);
    }
    for (int h : H) rows.push_back(elems[h]);
    auto B = lattice_basis(rows, n);
    IntMat g(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        i64 v = G.inner(B[i], B[j]);
        if (v % P2) throw std::logic_error("overlattice is not integral");
        g[i * n + j] = v / P2;
      }
    int li = 0;
    for (long sz = static_cast<long>(H.size()); sz > 1; sz /= p) ++li;
    out.push_back({GramMat(n, g), li});
  }
  return out;
}

}  // namespace detail

// b_p(T, p^{-k}) = alpha_p(H_k, T) for p odd, via primitive densities of overlattices
inline Rational siegel_value_hyperbolic(const GramMat& G, i64 p, int k) {
  if (p == 2) throw std::invalid_argument("hyperbolic evaluation needs p odd");
  int n = G.n;
  Rational total = 0;
  for (auto& L : detail::p_overlattices(G, p)) {
    SymMatModN Tbar(n, p, L.gram.g);
    Rational cnt = detail::primitive_count_hyperbolic(Tbar, k);
    Rational prim = cnt * rpow(p, static_cast<long>(n) * (n + 1) / 2 - 2L * k * n);
    total += prim * rpow(p, static_cast<long>(n + 1 - 2 * k) * L.log_index);
  }
  return total;
}

inline SiegelPoly siegel_series_interpolation(const GramMat& G, i64 p, int extra = 2) {
  SiegelPoly S = siegel_header(G, p, SiegelMode::interpolation);
  int n = G.n, deg = 2 * S.nu_f;
  std::vector<Rational> xs, ys;
  int k0 = n / 2 + 1;
  for (int k = k0; k <= k0 + deg + extra; ++k) {
    Rational X = rpow(p, -k);
    Rational b = siegel_value_hyperbolic(G, p, k);
    Rational den = (1 - X);
    for (int i = 1; i <= n / 2; ++i) den *= 1 - rpow(p, 2 * i) * X * X;
    den /= 1 - Rational(S.xi) * rpow(p, n / 2) * X;
    xs.push_back(X);
    ys.push_back(b / den);
  }
  std::vector<Rational> fx(xs.begin(), xs.begin() + deg + 1), fy(ys.begin(), ys.begin() + deg + 1);
  S.F = lagrange_interpolate(fx, fy);
  S.known_terms = deg + 1 + extra;
  for (std::size_t i = deg + 1; i < xs.size(); ++i)
    if (S.F.eval(xs[i]) != ys[i]) S.flags.push_back("interpolation check point disagrees");
  siegel_audit(S);
  if (S.F.coeffs().size() > static_cast<std::size_t>(deg + 1)) S.complete = false;
  bool bad = false;
  for (auto& f : S.flags) bad |= (f.find("disagrees") != std::string::npos);
  if (bad) S.complete = false;
  return S;
}

inline SiegelPoly siegel_series(const GramMat& G, i64 p, SiegelMode mode, const Budget& budget = {}) {
  if (mode == SiegelMode::interpolation) return siegel_series_interpolation(G, p);
  int deg = 2 * nt::valuation(disc_split(G).f, p);
  return siegel_series_oracle(G, p, std::max(deg, 1), budget);
}

}  // namespace kmlift
