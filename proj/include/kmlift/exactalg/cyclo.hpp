#pragma once

#include <complex>
#include <cmath>
#include <map>
#include <optional>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "kmlift/exactalg/numtheory.hpp"
#include "kmlift/exactalg/poly.hpp"
#include "kmlift/exactalg/rational.hpp"

namespace kmlift {

namespace detail {

// Integer coefficients of the n-th cyclotomic polynomial, index = degree.
inline const std::vector<long long>& cyclotomic_coeffs(int n) {
  static std::recursive_mutex mu;
  static std::map<int, std::vector<long long>> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  // x^n - 1 divided by Phi_d for every proper divisor d
  std::vector<long long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (long long d : nt::divisors(n)) {
    if (d == n) continue;
    const auto& phi_d = cyclotomic_coeffs(static_cast<int>(d));
    std::size_t dn = num.size() - 1, dd = phi_d.size() - 1;
    std::vector<long long> q(dn - dd + 1, 0);
    for (std::size_t k = dn - dd + 1; k-- > 0;) {
      long long c = num[k + dd];
      q[k] = c;
      for (std::size_t j = 0; j <= dd; ++j) num[k + j] -= c * phi_d[j];
    }
    num = q;
  }
  return cache.emplace(n, std::move(num)).first->second;
}

template <class T>
Rational to_rational_value(const T& v) {
  if constexpr (std::is_integral_v<T>)
    return Rational(static_cast<long>(v));
  else
    return Rational(v);
}

}  // namespace detail

// Element of Q(zeta_L), zeta_L = exp(2 pi i / L).  Canonical form: the
// polynomial in zeta_L of degree < phi(L) (remainder modulo Phi_L).
class CycloNum {
 public:
  CycloNum() : level_(1), c_{Rational(0)} {}
  CycloNum(const Rational& r) : level_(1), c_{r} {}  // NOLINT
  CycloNum(long v) : CycloNum(Rational(v)) {}        // NOLINT

  static CycloNum root_of_unity(int level, long exponent) {
    std::vector<Rational> raw(level, Rational(0));
    raw[nt::mod(exponent, level)] = 1;
    return CycloNum(level, std::move(raw));
  }

  // sum_e counts[e] zeta_L^e
  template <class T>
  static CycloNum from_exponent_counts(int level, const std::vector<T>& counts) {
    if (static_cast<int>(counts.size()) != level)
      throw std::invalid_argument("exponent histogram size must equal level");
    std::vector<Rational> raw(level);
    for (int e = 0; e < level; ++e) raw[e] = detail::to_rational_value(counts[e]);
    return CycloNum(level, std::move(raw));
  }

  // raw coefficients of zeta_L^e, e in [0, size), reduced mod x^L - 1 and Phi_L
  CycloNum(int level, std::vector<Rational> raw) : level_(level) {
    if (level < 1) throw std::invalid_argument("cyclotomic level must be positive");
    reduce(std::move(raw));
  }

  int level() const { return level_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  Rational to_rational() const {
    if (!is_rational()) throw std::domain_error("cyclotomic number is not rational: " + to_string());
    return c_.empty() ? Rational(0) : c_[0];
  }

  CycloNum at_level(int L) const {
    if (L % level_ != 0) throw std::invalid_argument("target level must be a multiple");
    if (L == level_) return *this;
    int m = L / level_;
    std::vector<Rational> raw(L, Rational(0));
    for (std::size_t e = 0; e < c_.size(); ++e) raw[(e * m) % L] += c_[e];
    return CycloNum(L, std::move(raw));
  }

  // Express at a smaller level L | level(); nullopt if not in Q(zeta_L).
  std::optional<CycloNum> try_at_level(int L) const;

  // smallest level (dividing the current one) that contains this element
  CycloNum minimal_level() const {
    for (long long d : nt::divisors(level_)) {
      if (d == level_) break;
      if (auto r = try_at_level(static_cast<int>(d))) return *r;
    }
    return *this;
  }

  CycloNum conj() const {
    std::vector<Rational> raw(level_, Rational(0));
    for (std::size_t e = 0; e < c_.size(); ++e) raw[(level_ - e) % level_] += c_[e];
    return CycloNum(level_, std::move(raw));
  }

  friend CycloNum operator+(const CycloNum& a, const CycloNum& b) {
    int L = static_cast<int>(nt::lcm(a.level_, b.level_));
    CycloNum x = a.at_level(L), y = b.at_level(L);
    for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
  }
  friend CycloNum operator-(const CycloNum& a) {
    CycloNum x = a;
    for (auto& v : x.c_) v = -v;
    return x;
  }
  friend CycloNum operator-(const CycloNum& a, const CycloNum& b) { return a + (-b); }

  friend CycloNum operator*(const CycloNum& a, const CycloNum& b) {
    if (a.level_ == 1) return b.scaled(a.c_[0]);
    if (b.level_ == 1) return a.scaled(b.c_[0]);
    int L = static_cast<int>(nt::lcm(a.level_, b.level_));
    CycloNum x = a.at_level(L), y = b.at_level(L);
    std::vector<Rational> raw(L, Rational(0));
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] == 0) continue;
      for (std::size_t j = 0; j < y.c_.size(); ++j) {
        if (y.c_[j] == 0) continue;
        raw[(i + j) % L] += x.c_[i] * y.c_[j];
      }
    }
    return CycloNum(L, std::move(raw));
  }

  CycloNum inverse() const {
    if (is_zero()) throw std::domain_error("division by zero cyclotomic number");
    if (level_ == 1) return CycloNum(Rational(1) / c_[0]);
    const auto& phi = detail::cyclotomic_coeffs(level_);
    std::vector<Rational> pc;
    for (auto v : phi) pc.emplace_back(Integer(static_cast<long>(v)));
    RatPoly a(c_), m(pc);
    auto [g, s, t] = ext_gcd(a, m);
    if (g != RatPoly(Rational(1))) throw std::domain_error("non-invertible cyclotomic element");
    return CycloNum(level_, s.coeffs());
  }

  friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }

  CycloNum& operator+=(const CycloNum& o) { return *this = *this + o; }
  CycloNum& operator-=(const CycloNum& o) { return *this = *this - o; }
  CycloNum& operator*=(const CycloNum& o) { return *this = *this * o; }

  CycloNum pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycloNum r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const CycloNum& a, const CycloNum& b) {
    int L = static_cast<int>(nt::lcm(a.level_, b.level_));
    return a.at_level(L).c_ == b.at_level(L).c_;
  }
  friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

  std::complex<double> to_complex() const {
    std::complex<double> z = 0;
    for (std::size_t e = 0; e < c_.size(); ++e) {
      double ang = 2 * std::numbers::pi * static_cast<double>(e) / level_;
      z += c_[e].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return z;
  }

  // "a0 + a1*z^1 + ... @L" at the minimal level, or a plain rational
  std::string to_string() const {
    if (is_rational()) return to_fraction_string(to_rational());
    CycloNum low = minimal_level();
    if (low.level_ != level_) return low.to_string();
    std::ostringstream os;
    bool first = true;
    for (std::size_t e = 0; e < c_.size(); ++e) {
      if (c_[e] == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << to_fraction_string(c_[e]);
      if (e) os << "*z^" << e;
    }
    os << " @" << level_;
    return os.str();
  }

  // map exponent -> coefficient, omitting zeros
  std::map<int, Rational> sparse() const {
    std::map<int, Rational> m;
    for (std::size_t e = 0; e < c_.size(); ++e)
      if (c_[e] != 0) m[static_cast<int>(e)] = c_[e];
    return m;
  }

 private:
  CycloNum scaled(const Rational& s) const {
    CycloNum x = *this;
    for (auto& v : x.c_) v *= s;
    return x;
  }

  void reduce(std::vector<Rational> raw) {
    std::vector<Rational> folded(level_, Rational(0));
    for (std::size_t e = 0; e < raw.size(); ++e)
      if (raw[e] != 0) folded[e % level_] += raw[e];
    const auto& phi = detail::cyclotomic_coeffs(level_);
    std::size_t d = phi.size() - 1;
    for (std::size_t k = folded.size(); k-- > d;) {
      if (folded[k] == 0) continue;
      Rational c = folded[k];
      for (std::size_t j = 0; j <= d; ++j)
        if (phi[j] != 0) folded[k - d + j] -= c * static_cast<long>(phi[j]);
    }
    folded.resize(d);
    c_ = std::move(folded);
  }

  int level_;
  std::vector<Rational> c_;
};

inline std::optional<CycloNum> CycloNum::try_at_level(int L) const {
  if (level_ % L != 0) throw std::invalid_argument("descent level must divide the level");
  if (L == level_) return *this;
  // basis images zeta_L^e (e < phi(L)) at current level; solve linear system
  int dim = static_cast<int>(nt::euler_phi(L));
  int rows = static_cast<int>(c_.size());
  std::vector<std::vector<Rational>> M(rows, std::vector<Rational>(dim + 1, Rational(0)));
  for (int e = 0; e < dim; ++e) {
    auto img = root_of_unity(L, e).at_level(level_);
    for (int r = 0; r < rows; ++r) M[r][e] = img.c_[r];
  }
  for (int r = 0; r < rows; ++r) M[r][dim] = c_[r];
  int piv_row = 0;
  std::vector<int> piv_col;
  for (int col = 0; col < dim && piv_row < rows; ++col) {
    int sel = -1;
    for (int r = piv_row; r < rows; ++r)
      if (M[r][col] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(M[sel], M[piv_row]);
    Rational inv = 1 / M[piv_row][col];
    for (auto& v : M[piv_row]) v *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == piv_row || M[r][col] == 0) continue;
      Rational f = M[r][col];
      for (int c = 0; c <= dim; ++c) M[r][c] -= f * M[piv_row][c];
    }
    piv_col.push_back(col);
    ++piv_row;
  }
  for (int r = piv_row; r < rows; ++r)
    if (M[r][dim] != 0) return std::nullopt;
  std::vector<Rational> sol(L, Rational(0));
  for (int i = 0; i < piv_row; ++i) sol[piv_col[i]] = M[i][dim];
  return CycloNum(L, std::move(sol));
}

inline std::ostream& operator<<(std::ostream& os, const CycloNum& z) { return os << z.to_string(); }

}  // namespace kmlift
