#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmlift/exactalg/numtheory.hpp"
#include "kmlift/exactalg/rational.hpp"

namespace kmlift {

// q-expansion sum_{e < precision} c(e) q^e of weight twice_weight/2 on Gamma_0(level)
struct QExp {
  int twice_weight = 0;
  i64 level = 1;
  std::vector<Rational> c;

  QExp() = default;
  QExp(int tw, i64 lv, int precision) : twice_weight(tw), level(lv), c(precision, Rational(0)) {}

  int precision() const { return static_cast<int>(c.size()); }
  bool half_integral() const { return twice_weight % 2 != 0; }
  Rational operator[](i64 e) const {
    if (e < 0 || e >= precision()) throw std::out_of_range("q-expansion index beyond precision");
    return c[e];
  }

  // (-1)^lambda e = 0, 1 mod 4 off the support vanishes, lambda = weight - 1/2
  bool plus_support_ok() const {
    if (!half_integral()) throw std::logic_error("support condition needs half-integral weight");
    int lambda = (twice_weight - 1) / 2;
    for (int e = 0; e < precision(); ++e) {
      i64 r = nt::mod(lambda % 2 ? -e : e, 4);
      if ((r == 2 || r == 3) && c[e] != 0) return false;
    }
    return true;
  }

  friend QExp operator*(const QExp& a, const QExp& b) {
    int P = std::min(a.precision(), b.precision());
    QExp r(a.twice_weight + b.twice_weight, nt::lcm(a.level, b.level), P);
    for (int i = 0; i < P; ++i) {
      if (a.c[i] == 0) continue;
      for (int j = 0; i + j < P; ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
  }

  QExp pow(int e) const {
    QExp r(0, level, precision());
    r.c[0] = 1;
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  std::string to_string(int terms = 10) const {
    std::ostringstream os;
    bool first = true;
    for (int e = 0; e < precision() && e < terms; ++e) {
      if (c[e] == 0) continue;
      os << (first ? "" : " + ") << "(" << c[e].get_str() << ")q^" << e;
      first = false;
    }
    if (first) os << "0";
    os << " + O(q^" << precision() << ")";
    return os.str();
  }
};

// sum_{m in Z} q^{m^2}, weight 1/2, level 4
inline QExp theta_series(int P) {
  QExp t(1, 4, P);
  for (i64 m = 0; m * m < P; ++m) t.c[m * m] += m ? 2 : 1;
  return t;
}

// sum_{m odd} sigma_1(m) q^m, weight 2, level 4
inline QExp odd_sigma_series(int P) {
  QExp f(4, 4, P);
  for (i64 m = 1; m < P; m += 2) {
    i64 s = 0;
    for (i64 d : nt::divisors(m)) s += d;
    f.c[m] = s;
  }
  return f;
}

// q prod (1 - q^n)^24, weight 12, level 1
inline QExp delta_series(int P) {
  QExp eta(0, 1, P);
  eta.c[0] = 1;
  for (i64 n = 1; n < P; ++n)
    for (i64 i = P - 1; i >= n; --i) eta.c[i] -= eta.c[i - n];
  QExp e24 = eta.pow(24);
  QExp d(24, 1, P);
  for (int i = 1; i < P; ++i) d.c[i] = e24.c[i - 1];
  return d;
}

}  // namespace kmlift
