#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kmlift/exactalg/truncseries.hpp"
#include "kmlift/plocal/siegel.hpp"

namespace kmlift {

enum class Omega { iota, eps };
enum class PSeriesMode { brute, closed };

inline std::string omega_name(Omega w) { return w == Omega::iota ? "iota" : "eps"; }

using XLaurent = Laurent<QuadSurd>;
using PSeriesT = TruncSeries<XLaurent>;

struct PSeries {
  int n = 0;
  i64 p = 3;
  Rational d0 = 1;
  Omega omega = Omega::iota;
  PSeriesMode mode = PSeriesMode::closed;
  PSeriesT series{"t", 1};
  int classes_used = 0;

  bool parity_ok() const {
    int v0 = nt::valuation(d0, p);
    for (int i = 0; i < series.precision(); ++i)
      if ((i - v0) % 2 != 0 && !series[i].is_zero()) return false;
    return true;
  }
};

namespace detail {

inline QuadSurd half_power(i64 p, long twice_exponent) { return QuadSurd::sqrt_prime_power(p, twice_exponent); }

inline Rational phi(const Rational& x, int r) {
  Rational v = 1;
  Rational xp = 1;
  for (int i = 1; i <= r; ++i) {
    xp *= x;
    v *= 1 - xp;
  }
  return v;
}

}  // namespace detail

// class sum of F~(B,X) omega(B) / alpha_p(B) t^{nu_p(det B)} over even Z_p-classes
inline PSeries p_series_brute(int n, i64 p, const Rational& d0, Omega omega, int precision) {
  PSeries P;
  P.n = n;
  P.p = p;
  P.d0 = d0;
  P.omega = omega;
  P.mode = PSeriesMode::brute;
  P.series = PSeriesT("t", precision);
  for (auto& J : enumerate_zp_classes(n, p, d0, precision - 1)) {
    GramMat B = jordan_realize(J);
    auto S = siegel_series_interpolation(B, p);
    if (!S.complete || !S.symmetric) throw std::runtime_error("Siegel series audit failed for " + J.to_string());
    Rational alpha = local_density_closed(J);
    int w = 1;
    if (omega == Omega::eps) {
      std::vector<Rational> A(B.g.begin(), B.g.end());
      w = hasse_invariant(A, n, p);
    }
    XLaurent term = S.tilde();
    XLaurent scaled;
    for (auto& [k, c] : term.terms()) scaled.add(k, c * QuadSurd(Rational(w) / alpha));
    P.series[J.det_valuation()] += scaled;
    ++P.classes_used;
  }
  return P;
}

inline PSeries p_series_closed(int n, i64 p, const Rational& d0, Omega omega, int precision) {
  if (p == 2) throw std::invalid_argument("closed P-series implemented for odd p");
  PSeries P;
  P.n = n;
  P.p = p;
  P.d0 = d0;
  P.omega = omega;
  P.mode = PSeriesMode::closed;
  int v0 = nt::valuation(d0, p);
  int xi0 = xi_tilde(p, d0);
  Rational pre = 1 / (detail::phi(rpow(p, -2), n / 2 - 1) * (1 - rpow(p, -n / 2) * xi0));
  XLaurent X = XLaurent::monomial(QuadSurd(1), 1), Xi = XLaurent::monomial(QuadSurd(1), -1);
  auto c = [&](const QuadSurd& s) { return XLaurent(s); };
  PSeriesT num("t", precision);
  std::vector<std::pair<XLaurent, int>> den;
  if (omega == Omega::iota) {
    // (1 + a t^2)(1 + b xi0^2 t^2) - xi0 c t^2 (X + X^-1 + p^{1/2-n/2} + p^{n/2-1/2})
    QuadSurd a = detail::half_power(p, -n - 3), b = detail::half_power(p, -n - 5) * QuadSurd(xi0 * xi0),
             cc = detail::half_power(p, -n - 4) * QuadSurd(xi0);
    XLaurent lin = X + Xi + c(detail::half_power(p, 1 - n)) + c(detail::half_power(p, n - 1));
    PSeriesT N("t", precision + 4);
    N[0] = c(QuadSurd(1));
    N[2] = c(a + b) - c(cc) * lin;
    N[4] = c(a * b);
    for (int i = 0; i < precision; ++i) {
      int j = i - v0;
      if (j >= 0) num[i] = N[j] * c(QuadSurd(pre * rpow(p, -v0)));
    }
    den.push_back({X * c(QuadSurd(rpow(p, -2))), 2});
    den.push_back({Xi * c(QuadSurd(rpow(p, -2))), 2});
    for (int i = 1; i <= n / 2; ++i) {
      den.push_back({X * c(QuadSurd(rpow(p, -2 * i - 1))), 2});
      den.push_back({Xi * c(QuadSurd(rpow(p, -2 * i - 1))), 2});
    }
  } else {
    num[0] = c(QuadSurd(pre * xi0 * xi0));
    for (int i = 1; i <= n / 2; ++i) {
      den.push_back({X * c(QuadSurd(rpow(p, -2 * i))), 2});
      den.push_back({Xi * c(QuadSurd(rpow(p, -2 * i))), 2});
    }
  }
  P.series = PSeriesT::expand_rational(num, den);
  return P;
}

inline PSeries p_series(int n, i64 p, const Rational& d0, Omega omega, int precision, PSeriesMode mode) {
  return mode == PSeriesMode::brute ? p_series_brute(n, p, d0, omega, precision) : p_series_closed(n, p, d0, omega, precision);
}

}  // namespace kmlift
