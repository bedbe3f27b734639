#pragma once

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "kmlift/exactalg/numtheory.hpp"
#include "kmlift/exactalg/rational.hpp"

namespace kmlift {

// a + b*sqrt(d) with d a squarefree integer != 1.  A purely rational value
// carries d = 0 and combines with any radicand.
class QuadSurd {
 public:
  QuadSurd() = default;
  QuadSurd(const Rational& a) : a_(a) {}  // NOLINT
  QuadSurd(long a) : a_(a) {}             // NOLINT
  QuadSurd(const Rational& a, const Rational& b, long d) : a_(a), b_(b), d_(d) {
    if (b_ == 0) {
      d_ = 0;
    } else if (d == 0 || d == 1 || !nt::is_squarefree(d < 0 ? -d : d)) {
      throw std::invalid_argument("radicand must be squarefree and not 1");
    }
  }

  // p^(h/2) for any integer h, p prime
  static QuadSurd sqrt_prime_power(long p, long h) {
    long q = h >= 0 ? h / 2 : -((-h + 1) / 2);
    Rational base = rpow(p, q);
    if (h - 2 * q == 0) return QuadSurd(base);
    return QuadSurd(Rational(0), base, p);
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  Rational to_rational() const {
    if (b_ != 0) throw std::domain_error("surd is not rational");
    return a_;
  }

  friend QuadSurd operator+(const QuadSurd& x, const QuadSurd& y) {
    return QuadSurd(x.a_ + y.a_, x.b_ + y.b_, join(x, y));
  }
  friend QuadSurd operator-(const QuadSurd& x) { return QuadSurd(-x.a_, -x.b_, x.d_); }
  friend QuadSurd operator-(const QuadSurd& x, const QuadSurd& y) { return x + (-y); }
  friend QuadSurd operator*(const QuadSurd& x, const QuadSurd& y) {
    long d = join(x, y);
    return QuadSurd(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  QuadSurd inverse() const {
    Rational n = a_ * a_ - b_ * b_ * d_;
    if (n == 0) throw std::domain_error("division by zero surd");
    return QuadSurd(a_ / n, -b_ / n, d_);
  }
  friend QuadSurd operator/(const QuadSurd& x, const QuadSurd& y) { return x * y.inverse(); }
  QuadSurd& operator+=(const QuadSurd& o) { return *this = *this + o; }
  QuadSurd& operator-=(const QuadSurd& o) { return *this = *this - o; }
  QuadSurd& operator*=(const QuadSurd& o) { return *this = *this * o; }
  QuadSurd& operator/=(const QuadSurd& o) { return *this = *this / o; }

  friend bool operator==(const QuadSurd& x, const QuadSurd& y) {
    if (x.b_ != 0 && y.b_ != 0 && x.d_ != y.d_) return false;
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadSurd& x, const QuadSurd& y) { return !(x == y); }

  double to_double() const {
    return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
  }

  std::string to_string() const {
    if (b_ == 0) return to_fraction_string(a_);
    std::ostringstream os;
    os << to_fraction_string(a_) << " + " << to_fraction_string(b_) << "*sqrt(" << d_ << ")";
    return os.str();
  }

 private:
  static long join(const QuadSurd& x, const QuadSurd& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
    throw std::domain_error("mixing different quadratic fields");
  }

  Rational a_{0}, b_{0};
  long d_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const QuadSurd& x) { return os << x.to_string(); }

}  // namespace kmlift
