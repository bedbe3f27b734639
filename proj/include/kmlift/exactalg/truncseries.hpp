#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kmlift {

// Power series in one variable modulo t^precision.
template <class C>
class TruncSeries {
 public:
  TruncSeries(std::string var, int precision) : var_(std::move(var)), c_(check(precision), C(0)) {}
  TruncSeries(std::string var, int precision, std::vector<C> coeffs)
      : var_(std::move(var)), c_(std::move(coeffs)) {
    c_.resize(check(precision), C(0));
  }

  static TruncSeries monomial(std::string var, int precision, const C& a, int k) {
    TruncSeries s(std::move(var), precision);
    if (k < precision) s.c_[k] = a;
    return s;
  }

  int precision() const { return static_cast<int>(c_.size()); }
  const std::string& var() const { return var_; }
  const C& operator[](int i) const { return c_.at(i); }
  C& operator[](int i) { return c_.at(i); }
  const std::vector<C>& coeffs() const { return c_; }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    a.same(b);
    TruncSeries r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
    return r;
  }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    a.same(b);
    TruncSeries r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = r.c_[i] - b.c_[i];
    return r;
  }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.same(b);
    TruncSeries r(a.var_, a.precision());
    int P = a.precision();
    for (int i = 0; i < P; ++i) {
      if (a.c_[i] == C(0)) continue;
      for (int j = 0; i + j < P; ++j) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    }
    return r;
  }
  friend TruncSeries operator*(const C& s, const TruncSeries& a) {
    TruncSeries r = a;
    for (auto& x : r.c_) x = s * x;
    return r;
  }

  // multiply by 1/(1 - c t^k), k >= 1
  TruncSeries divided_by_one_minus(const C& c, int k) const {
    if (k < 1) throw std::invalid_argument("denominator factor has zero constant term");
    TruncSeries r = *this;
    for (int i = k; i < precision(); ++i) r.c_[i] = r.c_[i] + c * r.c_[i - k];
    return r;
  }

  // numerator / prod_j (1 - c_j t^{k_j})
  static TruncSeries expand_rational(const TruncSeries& numerator,
                                     const std::vector<std::pair<C, int>>& den_factors) {
    TruncSeries r = numerator;
    for (const auto& [c, k] : den_factors) r = r.divided_by_one_minus(c, k);
    return r;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.var_ == b.var_ && a.c_ == b.c_;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == C(0)) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c_[i] << ")*" << var_ << "^" << i;
    }
    if (first) os << "0";
    os << " + O(" << var_ << "^" << c_.size() << ")";
    return os.str();
  }

 private:
  static int check(int P) {
    if (P < 1) throw std::invalid_argument("series precision must be positive");
    return P;
  }
  void same(const TruncSeries& o) const {
    if (var_ != o.var_) throw std::invalid_argument("series in different variables");
    if (c_.size() != o.c_.size()) throw std::invalid_argument("series precision mismatch");
  }

  std::string var_;
  std::vector<C> c_;
};

}  // namespace kmlift
