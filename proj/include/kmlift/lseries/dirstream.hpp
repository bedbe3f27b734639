#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmlift/characters/dirichlet.hpp"
#include "kmlift/characters/quadratic.hpp"
#include "kmlift/exactalg/cyclo.hpp"
#include "kmlift/lseries/qexp.hpp"

namespace kmlift {

// sum_{m=1}^{bound} a(m) m^{-s}
struct DirStream {
  i64 bound = 0;
  std::vector<CycloNum> a;  // a[m], a[0] unused
  std::string tag;

  DirStream() = default;
  DirStream(i64 B, std::string t) : bound(B), a(B + 1, CycloNum(0)), tag(std::move(t)) {}

  const CycloNum& operator[](i64 m) const {
    if (m < 1 || m > bound) throw std::out_of_range("stream index beyond bound");
    return a[m];
  }
  CycloNum& at(i64 m) {
    if (m < 1 || m > bound) throw std::out_of_range("stream index beyond bound");
    return a[m];
  }
  bool is_zero() const {
    for (i64 m = 1; m <= bound; ++m)
      if (!a[m].is_zero()) return false;
    return true;
  }

  DirStream truncated(i64 B) const {
    if (B > bound) throw std::out_of_range("cannot extend a stream");
    DirStream r(B, tag);
    for (i64 m = 1; m <= B; ++m) r.a[m] = a[m];
    return r;
  }

  DirStream conj() const {
    DirStream r(bound, "conj(" + tag + ")");
    for (i64 m = 1; m <= bound; ++m) r.a[m] = a[m].conj();
    return r;
  }

  friend DirStream operator*(const DirStream& x, const DirStream& y) {
    DirStream r(std::min(x.bound, y.bound), x.tag + "*" + y.tag);
    for (i64 i = 1; i <= r.bound; ++i) {
      if (x.a[i].is_zero()) continue;
      for (i64 j = 1; i * j <= r.bound; ++j)
        if (!y.a[j].is_zero()) r.a[i * j] += x.a[i] * y.a[j];
    }
    return r;
  }
  friend DirStream operator+(const DirStream& x, const DirStream& y) {
    DirStream r(std::min(x.bound, y.bound), x.tag + "+" + y.tag);
    for (i64 m = 1; m <= r.bound; ++m) r.a[m] = x.a[m] + y.a[m];
    return r;
  }
  friend DirStream operator*(const CycloNum& c, const DirStream& x) {
    DirStream r(x.bound, x.tag);
    for (i64 m = 1; m <= x.bound; ++m) r.a[m] = c * x.a[m];
    return r;
  }

  friend bool operator==(const DirStream& x, const DirStream& y) {
    if (x.bound != y.bound) return false;
    for (i64 m = 1; m <= x.bound; ++m)
      if (!(x.a[m] == y.a[m])) return false;
    return true;
  }
};

using CharFn = std::function<CycloNum(i64)>;

inline CharFn char_fn(const DirichletChar& chi) {
  return [chi](i64 m) { return chi.value(nt::mod(m, chi.modulus())); };
}

// the unit-only version chi * 1_{(m, M) = 1}
inline CharFn char_fn_coprime(const DirichletChar& chi, i64 M) {
  return [chi, M](i64 m) { return nt::gcd(m, M) == 1 ? chi.value(nt::mod(m, chi.modulus())) : CycloNum(0); };
}

inline CharFn trivial_char_fn() {
  return [](i64) { return CycloNum(1); };
}

// L(w s - a, f, chi): index m^w, coefficient c(m) chi(m) m^a
inline DirStream power_stream(const std::function<Rational(i64)>& c, const CharFn& chi, int w, int a, i64 B,
                              const std::string& tag) {
  DirStream r(B, tag);
  i64 m = 1;
  for (;; ++m) {
    i64 idx = 1;
    for (int i = 0; i < w; ++i) idx *= m;
    if (idx > B) break;
    Rational cm = c(m);
    if (cm == 0) continue;
    r.a[idx] = chi(m) * CycloNum(cm * rpow(m, a));
  }
  return r;
}

// L(w s - a, chi)
inline DirStream dirichlet_L_stream(const CharFn& chi, int w, int a, i64 B, const std::string& tag) {
  return power_stream([](i64) { return Rational(1); }, chi, w, a, B, tag);
}

inline void require_normalized(const QExp& f, i64 B) {
  if (f.precision() <= B) throw std::out_of_range("q-expansion precision below stream bound");
  if (f.c[1] != 1) throw std::invalid_argument("eigenform is not normalized (c(1) != 1)");
}

// L(s, f, chi) = sum c_f(m) chi(m) m^{-s}
inline DirStream hecke_stream(const QExp& f, const DirichletChar& chi, i64 B) {
  require_normalized(f, B);
  return power_stream([&](i64 m) { return f.c[m]; }, char_fn(chi), 1, 0, B, "L(s,f," + chi.descriptor() + ")");
}

enum class RankinVariant { R, R_tilde };

// L(2s - k1 - k2 + 1, chi^2 or omega) sum c1(m) c2(m) chi(m) m^{-s}
inline DirStream rankin_stream(const QExp& h1, const QExp& h2, const DirichletChar& chi, int k1, int k2, i64 B,
                               RankinVariant v) {
  if (h1.precision() <= B || h2.precision() <= B) throw std::out_of_range("q-expansion precision below stream bound");
  DirichletChar chi2 = chi.pow(2);
  CharFn pre;
  if (v == RankinVariant::R) {
    pre = char_fn(chi2);
  } else {
    int t = ((k1 - k2) % 2 + 2) % 2;
    pre = [chi2, t](i64 d) {
      CycloNum x = chi2.value(nt::mod(d, chi2.modulus()));
      if (d % 2 == 0) return CycloNum(0);
      return t ? CycloNum(kronecker(-4, d)) * x : x;
    };
  }
  DirStream prefactor = dirichlet_L_stream(pre, 2, k1 + k2 - 1, B, "L(2s-" + std::to_string(k1 + k2 - 1) + ")");
  DirStream core = power_stream([&](i64 m) { return h1.c[m] * h2.c[m]; }, char_fn(chi), 1, 0, B, "core");
  DirStream r = prefactor * core;
  r.tag = std::string(v == RankinVariant::R ? "R" : "Rtilde") + "(" + chi.descriptor() + ")";
  return r;
}

// prod_j L(2s - a_j, f, chi2)
inline DirStream shifted_L_stream(const QExp& f, const DirichletChar& chi2, const std::vector<int>& shifts, i64 B) {
  require_normalized(f, B);
  DirStream r(B, "prod L(2s-a,f)");
  r.a[1] = 1;
  for (int a : shifts) r = r * power_stream([&](i64 m) { return f.c[m]; }, char_fn(chi2), 2, a, B, "");
  r.tag = "prod L(2s-a,f," + chi2.descriptor() + ")";
  return r;
}

}  // namespace kmlift
