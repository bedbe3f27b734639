#pragma once

#include <map>
#include <ostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace kmlift {

// Finite Laurent polynomial in X over a field F.
template <class F>
class Laurent {
 public:
  Laurent() = default;
  Laurent(const F& c) { add(0, c); }  // NOLINT
  static Laurent monomial(const F& c, int k) {
    Laurent r;
    r.add(k, c);
    return r;
  }

  const std::map<int, F>& terms() const { return t_; }
  F coeff(int k) const {
    auto it = t_.find(k);
    return it == t_.end() ? F(0) : it->second;
  }
  bool is_zero() const { return t_.empty(); }
  std::optional<int> max_degree() const {
    if (t_.empty()) return std::nullopt;
    return t_.rbegin()->first;
  }
  std::optional<int> min_degree() const {
    if (t_.empty()) return std::nullopt;
    return t_.begin()->first;
  }

  void add(int k, const F& c) {
    if (c == F(0)) return;
    auto [it, fresh] = t_.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second == F(0)) t_.erase(it);
    }
  }

  friend Laurent operator+(Laurent a, const Laurent& b) {
    for (const auto& [k, c] : b.t_) a.add(k, c);
    return a;
  }
  friend Laurent operator-(const Laurent& a) {
    Laurent r;
    for (const auto& [k, c] : a.t_) r.add(k, -c);
    return r;
  }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [i, x] : a.t_)
      for (const auto& [j, y] : b.t_) r.add(i + j, x * y);
    return r;
  }
  Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
  Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  // X -> X^{-1}
  Laurent inverted() const {
    Laurent r;
    for (const auto& [k, c] : t_) r.add(-k, c);
    return r;
  }

  // evaluate at X = x (x invertible when negative powers occur)
  F eval(const F& x) const {
    F r(0);
    for (const auto& [k, c] : t_) {
      F pw(1);
      F base = k >= 0 ? x : F(1) / x;
      for (int i = 0; i < (k >= 0 ? k : -k); ++i) pw = pw * base;
      r += c * pw;
    }
    return r;
  }

  friend bool operator==(const Laurent& a, const Laurent& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  std::string to_string(const std::string& var = "X") const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      if (k) os << "*" << var << "^" << k;
    }
    return os.str();
  }

 private:
  std::map<int, F> t_;
};

template <class F>
std::ostream& operator<<(std::ostream& os, const Laurent<F>& L) {
  return os << L.to_string();
}

// sum_{j>=0} c_j (X^j + X^{-j}), the j = 0 term counted once.
template <class F>
class SymLaurent {
 public:
  SymLaurent() = default;
  SymLaurent(const F& c) { set(0, c); }  // NOLINT

  // nullopt when the Laurent polynomial is not invariant under X -> 1/X
  static std::optional<SymLaurent> from_laurent(const Laurent<F>& L) {
    if (L.inverted() != L) return std::nullopt;
    SymLaurent s;
    for (const auto& [k, c] : L.terms())
      if (k >= 0) s.set(k, c);
    return s;
  }

  Laurent<F> to_laurent() const {
    Laurent<F> L;
    for (const auto& [j, c] : c_) {
      L.add(j, c);
      if (j) L.add(-j, c);
    }
    return L;
  }

  F coeff(int j) const {
    auto it = c_.find(j < 0 ? -j : j);
    return it == c_.end() ? F(0) : it->second;
  }
  const std::map<int, F>& coeffs() const { return c_; }
  void set(int j, const F& c) {
    if (j < 0) throw std::invalid_argument("symmetric index must be nonnegative");
    if (c == F(0))
      c_.erase(j);
    else
      c_[j] = c;
  }

  friend SymLaurent operator+(const SymLaurent& a, const SymLaurent& b) {
    return *from_laurent(a.to_laurent() + b.to_laurent());
  }
  friend SymLaurent operator-(const SymLaurent& a, const SymLaurent& b) {
    return *from_laurent(a.to_laurent() - b.to_laurent());
  }
  friend SymLaurent operator*(const SymLaurent& a, const SymLaurent& b) {
    return *from_laurent(a.to_laurent() * b.to_laurent());
  }
  SymLaurent& operator+=(const SymLaurent& o) { return *this = *this + o; }

  friend bool operator==(const SymLaurent& a, const SymLaurent& b) { return a.c_ == b.c_; }
  friend bool operator!=(const SymLaurent& a, const SymLaurent& b) { return !(a == b); }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [j, c] : c_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      if (j) os << "*(X^" << j << "+X^-" << j << ")";
    }
    return os.str();
  }

 private:
  std::map<int, F> c_;
};

}  // namespace kmlift
