#pragma once

#include <memory>
#include <utility>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmlift/characters/quadratic.hpp"
#include "kmlift/exactalg/cyclo.hpp"
#include "kmlift/exactalg/numtheory.hpp"

namespace kmlift {

// Fixed generators of (Z/N)^x: per prime power in increasing p, a primitive
// root for odd p^e; -1 for 4; -1 and 5 for 2^e, e >= 3.
struct UnitGroup {
  i64 N = 1;
  std::vector<i64> gens;
  std::vector<i64> orders;
  std::vector<std::vector<int>> logs;  // logs[a] = exponents, empty for non-units

  explicit UnitGroup(i64 n) : N(n) {
    if (n < 1) throw std::invalid_argument("modulus must be positive");
    for (auto [p, e] : nt::factorize(n == 1 ? 2 : n)) {
      if (n == 1) break;
      i64 q = nt::ipow(p, e), rest = n / q;
      auto lift = [&](i64 g) { return nt::crt(nt::mod(g, q), q, 1 % rest, rest); };
      if (p != 2) {
        gens.push_back(lift(nt::primitive_root(p, e)));
        orders.push_back(nt::euler_phi(q));
      } else if (e == 2) {
        gens.push_back(lift(-1));
        orders.push_back(2);
      } else if (e >= 3) {
        gens.push_back(lift(-1));
        orders.push_back(2);
        gens.push_back(lift(5));
        orders.push_back(q / 4);
      }
    }
    logs.assign(N, {});
    std::vector<int> ex(gens.size(), 0);
    while (true) {
      i64 a = 1 % N;
      for (std::size_t i = 0; i < gens.size(); ++i) a = nt::mulmod(a, nt::powmod(gens[i], ex[i], N), N);
      logs[a] = ex;
      std::size_t i = 0;
      while (i < ex.size() && ++ex[i] == orders[i]) ex[i++] = 0;
      if (i == ex.size()) break;
    }
  }
};

class DirichletChar {
 public:
  DirichletChar() : DirichletChar(1) {}

  // trivial character mod N
  explicit DirichletChar(i64 N) : N_(N), order_(1), exps_(N, 0) {
    if (N < 1) throw std::invalid_argument("modulus must be positive");
    for (i64 a = 0; a < N; ++a)
      if (nt::gcd(a, N) != 1) exps_[a] = -1;
  }

  // values zeta_L^{table[a]} (table[a] = -1 for non-units); reduced to exact order
  static DirichletChar from_table(i64 N, int L, std::vector<int> table) {
    DirichletChar c(N);
    i64 g = L;
    for (i64 a = 0; a < N; ++a) {
      bool unit = nt::gcd(a, N) == 1;
      if (unit != (table[a] >= 0)) throw std::invalid_argument("character table support mismatch");
      if (unit) {
        table[a] = static_cast<int>(nt::mod(table[a], L));
        g = nt::gcd(g, table[a]);
      }
    }
    if (g == 0) g = L;
    c.order_ = static_cast<int>(L / g);
    for (i64 a = 0; a < N; ++a) c.exps_[a] = table[a] < 0 ? -1 : static_cast<int>(table[a] / g);
    return c;
  }

  // "N:e1,e2,..."
  static DirichletChar from_descriptor(const std::string& desc) {
    auto colon = desc.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("character descriptor needs N:e1,...");
    i64 N = std::stoll(desc.substr(0, colon));
    std::vector<i64> ex;
    std::stringstream ss(desc.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) ex.push_back(std::stoll(tok));
    return from_generator_exponents(N, ex);
  }

  static DirichletChar from_generator_exponents(i64 N, const std::vector<i64>& ex) {
    UnitGroup U(N);
    if (ex.size() != U.gens.size())
      throw std::invalid_argument("descriptor has " + std::to_string(ex.size()) + " exponents, modulus " +
                                  std::to_string(N) + " needs " + std::to_string(U.gens.size()));
    i64 L = 1;
    for (i64 o : U.orders) L = nt::lcm(L, o);
    std::vector<int> table(N, -1);
    for (i64 a = 0; a < N; ++a) {
      if (nt::gcd(a, N) != 1) continue;
      i64 e = 0;
      for (std::size_t i = 0; i < ex.size(); ++i) e += U.logs[a][i] * nt::mod(ex[i], U.orders[i]) * (L / U.orders[i]);
      table[a] = static_cast<int>(nt::mod(e, L));
    }
    return from_table(N, static_cast<int>(L), table);
  }

  // quadratic character (D/*) mod |D|, via the Kronecker symbol
  static DirichletChar kronecker_char(i64 D) {
    i64 N = D < 0 ? -D : D;
    if (N == 0) throw std::invalid_argument("kronecker character needs D != 0");
    std::vector<int> t(N, -1);
    for (i64 a = 0; a < N; ++a) {
      if (nt::gcd(a, N) != 1) continue;
      int k = kronecker(D, a);
      if (k == 0) throw std::invalid_argument("D is not a discriminant-type modulus");
      t[a] = k == 1 ? 0 : 1;
    }
    return from_table(N, 2, t);
  }

  // Jacobi symbol (*/N), N odd
  static DirichletChar jacobi_char(i64 N) {
    std::vector<int> t(N, -1);
    for (i64 a = 0; a < N; ++a)
      if (nt::gcd(a, N) == 1) t[a] = jacobi_symbol(a, N) == 1 ? 0 : 1;
    return from_table(N, 2, t);
  }

  i64 modulus() const { return N_; }
  int order() const { return order_; }
  int level() const { return order_; }

  // exponent at level order(); -1 when the value is 0
  int exponent(i64 a) const { return exps_[nt::mod(a, N_)]; }
  bool is_unit_value(i64 a) const { return exponent(a) >= 0; }

  CycloNum value(i64 a) const {
    int e = exponent(a);
    if (e < 0) return CycloNum(0);
    return CycloNum::root_of_unity(order_, e);
  }

  bool is_trivial() const { return order_ == 1; }
  int parity() const {
    int e = exponent(-1);
    if (N_ <= 2) return 1;
    return e == 0 ? 1 : -1;
  }

  i64 conductor() const {
    for (i64 d : nt::divisors(N_)) {
      bool ok = true;
      for (i64 a = 1; a < N_ && ok; ++a)
        if (nt::gcd(a, N_) == 1 && nt::mod(a - 1, d) == 0 && exps_[a] != 0) ok = false;
      if (ok) return d;
    }
    return N_;
  }
  bool is_primitive() const { return conductor() == N_; }

  // the primitive character inducing this one
  DirichletChar primitive() const {
    i64 f = conductor();
    if (f == N_) return *this;
    std::vector<int> t(f, -1);
    for (i64 a = 0; a < f; ++a) {
      if (nt::gcd(a, f) != 1) continue;
      i64 b = a;
      while (nt::gcd(b, N_) != 1) b += f;
      t[a] = exps_[b % N_];
    }
    return from_table(f, order_, t);
  }

  DirichletChar conj() const { return pow(-1); }

  DirichletChar pow(i64 k) const {
    std::vector<int> t(N_);
    for (i64 a = 0; a < N_; ++a) t[a] = exps_[a] < 0 ? -1 : static_cast<int>(nt::mod(exps_[a] * k, order_));
    return from_table(N_, order_, t);
  }

  friend DirichletChar operator*(const DirichletChar& x, const DirichletChar& y) {
    if (x.N_ != y.N_) throw std::invalid_argument("character moduli differ");
    int L = static_cast<int>(nt::lcm(x.order_, y.order_));
    std::vector<int> t(x.N_);
    for (i64 a = 0; a < x.N_; ++a)
      t[a] = x.exps_[a] < 0 ? -1 : x.exps_[a] * (L / x.order_) + y.exps_[a] * (L / y.order_);
    return from_table(x.N_, L, t);
  }

  friend bool operator==(const DirichletChar& x, const DirichletChar& y) {
    return x.N_ == y.N_ && x.order_ == y.order_ && x.exps_ == y.exps_;
  }
  friend bool operator!=(const DirichletChar& x, const DirichletChar& y) { return !(x == y); }

  std::vector<i64> generator_exponents() const {
    UnitGroup U(N_);
    std::vector<i64> ex;
    for (std::size_t i = 0; i < U.gens.size(); ++i) {
      i64 e = exponent(U.gens[i]);
      ex.push_back(e * U.orders[i] / order_);
    }
    return ex;
  }

  std::string descriptor() const {
    std::string s = std::to_string(N_) + ":";
    auto ex = generator_exponents();
    for (std::size_t i = 0; i < ex.size(); ++i) s += (i ? "," : "") + std::to_string(ex[i]);
    return s;
  }

  // chi^(p): character mod p^e with chi^(p)(n) = chi(m), m = n mod p^e, m = 1 mod N/p^e
  DirichletChar local_component(i64 p) const {
    if (N_ % p != 0) throw std::invalid_argument("prime does not divide the modulus");
    i64 q = 1;
    while (N_ % (q * p) == 0) q *= p;
    i64 rest = N_ / q;
    std::vector<int> t(q, -1);
    for (i64 n = 0; n < q; ++n)
      if (nt::gcd(n, q) == 1) t[n] = exps_[nt::crt(n, q, 1 % rest, rest)];
    return from_table(q, order_, t);
  }

  // the same character viewed modulo a multiple M of N
  DirichletChar lift(i64 M) const {
    if (M % N_ != 0) throw std::invalid_argument("lift modulus must be a multiple");
    std::vector<int> t(M, -1);
    for (i64 a = 0; a < M; ++a)
      if (nt::gcd(a, M) == 1) t[a] = exps_[a % N_];
    return from_table(M, order_, t);
  }

 private:
  i64 N_;
  int order_;
  std::vector<int> exps_;
};

class CharGroup {
 public:
  explicit CharGroup(i64 N) : N_(N) {
    UnitGroup U(N);
    std::vector<i64> ex(U.gens.size(), 0);
    while (true) {
      chars_.push_back(DirichletChar::from_generator_exponents(N, ex));
      std::size_t i = 0;
      while (i < ex.size() && ++ex[i] == U.orders[i]) ex[i++] = 0;
      if (i == ex.size()) break;
    }
  }
  i64 modulus() const { return N_; }
  const std::vector<DirichletChar>& chars() const& { return chars_; }
  std::vector<DirichletChar> chars() && { return std::move(chars_); }
  std::size_t size() const { return chars_.size(); }

  // characters whose m-th power is trivial
  std::vector<DirichletChar> subgroup_Dm(i64 m) const {
    std::vector<DirichletChar> out;
    for (const auto& c : chars_)
      if (c.pow(m).is_trivial()) out.push_back(c);
    return out;
  }

 private:
  i64 N_;
  std::vector<DirichletChar> chars_;
};

// element of order exactly l in (Z/p)^x
inline i64 find_primitive_root_of_unity_mod(i64 p, i64 l) {
  if (l < 1 || (p - 1) % l != 0) throw std::invalid_argument("l must divide p - 1");
  i64 g = nt::primitive_root(p, 1);
  return nt::powmod(g, (p - 1) / l, p);
}

inline CycloNum gauss_sum(const DirichletChar& chi) {
  i64 N = chi.modulus();
  int L = static_cast<int>(nt::lcm(chi.order(), N));
  std::vector<long> hist(L, 0);
  for (i64 a = 0; a < N; ++a) {
    int e = chi.exponent(a);
    if (e < 0) continue;
    hist[(e * (L / chi.order()) + a * (L / N)) % L] += 1;
  }
  return CycloNum::from_exponent_counts(L, hist);
}

inline CycloNum jacobi_sum(const DirichletChar& chi, const DirichletChar& eta) {
  if (chi.modulus() != eta.modulus()) throw std::invalid_argument("character moduli differ");
  i64 N = chi.modulus();
  int L = static_cast<int>(nt::lcm(chi.order(), eta.order()));
  std::vector<long> hist(L, 0);
  for (i64 z = 0; z < N; ++z) {
    int a = chi.exponent(z), b = eta.exponent(1 - z);
    if (a < 0 || b < 0) continue;
    hist[(a * (L / chi.order()) + b * (L / eta.order())) % L] += 1;
  }
  return CycloNum::from_exponent_counts(L, hist);
}

// exponent histogram -> sum over values
inline CycloNum char_sum_from_histogram(const DirichletChar& chi, const std::vector<long>& hist_by_residue) {
  std::vector<long> h(chi.order(), 0);
  for (i64 a = 0; a < static_cast<i64>(hist_by_residue.size()); ++a) {
    int e = chi.exponent(a);
    if (e >= 0) h[e] += hist_by_residue[a];
  }
  return CycloNum::from_exponent_counts(chi.order(), h);
}

}  // namespace kmlift
