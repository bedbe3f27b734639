#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "kmlift/exactalg/rational.hpp"

namespace kmlift {

// Dense univariate polynomial, coefficient of x^i at index i.
// The zero polynomial has no coefficients and degree() == std::nullopt.
template <class F>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<F> c) : c_(std::move(c)) { trim(); }
  Poly(const F& constant) {  // NOLINT
    if (constant != F(0)) c_.push_back(constant);
  }

  static Poly monomial(const F& a, std::size_t k) {
    std::vector<F> c(k + 1, F(0));
    c[k] = a;
    return Poly(std::move(c));
  }

  std::optional<std::size_t> degree() const {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  bool is_zero() const { return c_.empty(); }
  const std::vector<F>& coeffs() const { return c_; }
  F operator[](std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }
  F lead() const { return c_.empty() ? F(0) : c_.back(); }

  void set(std::size_t i, const F& v) {
    if (i >= c_.size()) c_.resize(i + 1, F(0));
    c_[i] = v;
    trim();
  }

  F eval(const F& x) const {
    F r(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) { return Poly() - a; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<F> c(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator*(const F& s, const Poly& a) {
    std::vector<F> c = a.c_;
    for (auto& x : c) x = s * x;
    return Poly(std::move(c));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Euclidean division over a field.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly q, r = *this;
    std::size_t dd = *d.degree();
    F inv_lead = F(1) / d.lead();
    while (!r.is_zero() && *r.degree() >= dd) {
      std::size_t k = *r.degree() - dd;
      F f = r.lead() * inv_lead;
      q += monomial(f, k);
      r -= monomial(f, k) * d;
    }
    return {q, r};
  }

  std::string to_string(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == F(0)) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c_[i] << ")";
      if (i > 0) os << "*" << var << "^" << i;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == F(0)) c_.pop_back();
  }
  std::vector<F> c_;
};

using IntPolyX = Poly<Integer>;
using RatPoly = Poly<Rational>;

inline RatPoly to_rat_poly(const IntPolyX& p) {
  std::vector<Rational> c;
  for (const auto& x : p.coeffs()) c.emplace_back(x);
  return RatPoly(std::move(c));
}

// extended gcd over a field: returns (g, s, t) with s*a + t*b = g, g monic
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> ext_gcd(Poly<F> a, Poly<F> b) {
  Poly<F> s0(F(1)), s1, t0, t1(F(1));
  while (!b.is_zero()) {
    auto [q, r] = a.divmod(b);
    a = b;
    b = r;
    Poly<F> s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (a.is_zero()) return {a, s0, t0};
  F inv = F(1) / a.lead();
  return {inv * a, inv * s0, inv * t0};
}

// Interpolating polynomial through (x_i, y_i), distinct nodes.
template <class F>
Poly<F> lagrange_interpolate(const std::vector<F>& xs, const std::vector<F>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolation size mismatch");
  Poly<F> result;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Poly<F> basis(F(1));
    F denom(1);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis *= Poly<F>(std::vector<F>{-xs[j], F(1)});
      denom *= xs[i] - xs[j];
    }
    if (denom == F(0)) throw std::invalid_argument("repeated interpolation node");
    result += (ys[i] / denom) * basis;
  }
  return result;
}

}  // namespace kmlift
