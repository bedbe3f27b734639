#include <gtest/gtest.h>

#include "kmlift/exactalg/linalg.hpp"
#include "kmlift/lseries.hpp"

using namespace kmlift;

TEST(Bernoulli, Numbers) {
  EXPECT_EQ(bernoulli_number(1), rat(-1, 2));
  EXPECT_EQ(bernoulli_number(2), rat(1, 6));
  EXPECT_EQ(bernoulli_number(4), rat(-1, 30));
  EXPECT_EQ(bernoulli_number(12), rat(-691, 2730));
  for (int k = 3; k < 20; k += 2) EXPECT_EQ(bernoulli_number(k), 0);
}

TEST(Bernoulli, PolynomialIdentity) {
  // B_k(x + 1) - B_k(x) = k x^{k-1}
  for (int k = 1; k < 8; ++k) {
    auto B = bernoulli_poly(k);
    for (long x = -3; x <= 3; ++x) EXPECT_EQ(B.eval(Rational(x + 1)) - B.eval(Rational(x)), k * rpow(x, k - 1));
  }
}

TEST(GenBernoulli, Examples) {
  EXPECT_EQ(gen_bernoulli(DirichletChar(1), 4).to_rational(), rat(-1, 30));
  auto chi4 = DirichletChar::kronecker_char(-4);
  EXPECT_EQ(gen_bernoulli(chi4, 1).to_rational(), rat(-1, 2));
  EXPECT_EQ(dirichlet_L_at_negative(chi4, 1).to_rational(), rat(1, 2));
  EXPECT_EQ(gen_bernoulli_kronecker(-3, 1), rat(-1, 3));
  EXPECT_EQ(gen_bernoulli_kronecker(5, 2), rat(4, 5));
}

TEST(GenBernoulli, ParityVanishing) {
  for (i64 N : {5L, 7L, 8L, 12L, 13L})
    for (auto& chi : CharGroup(N).chars())
      for (int k = 1; k <= 6; ++k) {
        if (chi.is_trivial() && k == 1) continue;
        if (chi.parity() * (k % 2 ? -1 : 1) == -1) {
          EXPECT_TRUE(gen_bernoulli(chi, k).is_zero()) << chi.descriptor() << " " << k;
        }
      }
  EXPECT_EQ(gen_bernoulli(DirichletChar(5), 1).to_rational(), rat(1, 2));
}

TEST(GenBernoulli, DistributionRelation) {
  // imprimitive sum = primitive value times prod_{p | N} (1 - chi(p) p^{k-1})
  for (i64 N : {12L, 15L, 20L, 21L})
    for (auto& chi : CharGroup(N).chars()) {
      auto prim = chi.primitive();
      for (int k = 1; k <= 4; ++k) {
        CycloNum expect = gen_bernoulli(chi, k);
        for (i64 p : nt::prime_divisors(N)) {
          if (prim.modulus() % p == 0) continue;
          expect = expect * (CycloNum(1) - prim.value(p) * CycloNum(rpow(p, k - 1)));
        }
        EXPECT_EQ(gen_bernoulli_at_modulus(chi, k), expect) << chi.descriptor() << " " << k;
      }
    }
}

namespace {

// plus-space form of weight l + 1/2 spanned by theta^{w-4j} F2^j, constant term H(l,0)
QExp plus_eisenstein_oracle(int l, int P) {
  int w = 2 * l + 1;
  QExp th = theta_series(P), f2 = odd_sigma_series(P);
  std::vector<QExp> basis;
  for (int j = 0; 4 * j <= w; ++j) basis.push_back(th.pow(w - 4 * j) * f2.pow(j));
  int b = static_cast<int>(basis.size());
  DenseMat<Rational> M;
  for (int e = 1; e < P; ++e) {
    i64 r = nt::mod(l % 2 ? -e : e, 4);
    if (r != 2 && r != 3) continue;
    M.push_back({});
    for (int j = 0; j < b; ++j) M.back().push_back(basis[j].c[e]);
  }
  auto ker = nullspace(M, b);
  EXPECT_EQ(ker.size(), 1u);
  QExp E(w, 4, P);
  for (int j = 0; j < b; ++j)
    for (int e = 0; e < P; ++e) E.c[e] += ker[0][j] * basis[j].c[e];
  Rational scale = -bernoulli_number(2 * l) / (2 * l) / E.c[0];
  for (auto& x : E.c) x *= scale;
  return E;
}

}  // namespace

TEST(Cohen, SpecialValues) {
  EXPECT_EQ(cohen_H(2, 0), rat(1, 120));
  EXPECT_EQ(cohen_L(0, 2), rat(1, 120));
  EXPECT_EQ(cohen_L(0, 4), rat(1, 240));
  for (i64 D : {2L, 3L, 6L, 7L, -2L, -5L, 10L, 14L}) EXPECT_EQ(cohen_L(D, 2), 0) << D;
  EXPECT_EQ(cohen_H(2, 1), rat(-1, 12));
  EXPECT_EQ(cohen_H(2, 4), rat(-7, 12));
  EXPECT_EQ(cohen_H(2, 5), rat(-2, 5));
}

TEST(Cohen, EisensteinMatchesPlusSpace) {
  for (int l : {2, 4}) {
    auto E = cohen_eisenstein(l, 101);
    auto O = plus_eisenstein_oracle(l, 101);
    EXPECT_TRUE(E.series.plus_support_ok());
    for (int e = 0; e < 101; ++e) {
      EXPECT_EQ(E.series.c[e], O.c[e]) << "l=" << l << " e=" << e;
    }
  }
}

TEST(Cohen, ConventionAndGuards) {
  // L_{-m}(1 - l) with l even vanishes by parity off m = 0
  auto printed = cohen_eisenstein(2, 40, CohenConvention::printed);
  EXPECT_EQ(printed.series.c[0], rat(1, 120));
  for (int e = 1; e < 40; ++e) EXPECT_EQ(printed.series.c[e], 0) << e;
  EXPECT_EQ(cohen_eisenstein(2, 40).notes.size(), 1u);
  EXPECT_TRUE(cohen_eisenstein(4, 40).notes.empty());
  EXPECT_THROW(cohen_eisenstein(3, 40), std::invalid_argument);
}

TEST(QExpansion, DeltaCoefficients) {
  auto D = delta_series(60);
  EXPECT_EQ(D.c[1], 1);
  EXPECT_EQ(D.c[2], -24);
  EXPECT_EQ(D.c[3], 252);
  EXPECT_EQ(D.c[5], 4830);
  for (i64 m = 2; m < 60; ++m)
    for (i64 n = 2; m * n < 60; ++n) {
      if (nt::gcd(m, n) != 1) continue;
      EXPECT_EQ(D.c[m * n], D.c[m] * D.c[n]) << m << "," << n;
    }
  EXPECT_THROW(D[60], std::out_of_range);
}

TEST(Streams, HeckeStream) {
  auto D = delta_series(50);
  auto L = hecke_stream(D, DirichletChar(1), 40);
  EXPECT_EQ(L[2], CycloNum(-24));
  EXPECT_EQ(L[6], L[2] * L[3]);
  auto chi = DirichletChar::from_descriptor("5:1");
  auto Lc = hecke_stream(D, chi, 40);
  for (i64 m : {5L, 10L, 15L, 20L}) EXPECT_TRUE(Lc[m].is_zero());
  EXPECT_EQ(Lc[2], CycloNum(-24) * chi.value(2));
  EXPECT_THROW(hecke_stream(D, chi, 50), std::out_of_range);
  EXPECT_THROW(hecke_stream(cohen_eisenstein(2, 50).series, chi, 40), std::invalid_argument);
  EXPECT_THROW(L[41], std::out_of_range);
}

TEST(Streams, Algebra) {
  auto D = delta_series(80);
  auto chi = DirichletChar::from_descriptor("7:1");
  auto a = hecke_stream(D, chi, 70), b = dirichlet_L_stream(char_fn(chi), 2, 3, 70, "b"),
       c = power_stream([](i64 m) { return Rational(m % 3); }, trivial_char_fn(), 1, 1, 70, "c");
  EXPECT_EQ(a * b, b * a);
  EXPECT_EQ((a * b) * c, a * (b * c));
  EXPECT_EQ((a * b).bound, 70);
  EXPECT_EQ((a * b.truncated(30)).bound, 30);
}

TEST(Streams, Rankin) {
  int P = 120;
  auto E = cohen_eisenstein(2, P).series;
  auto T = theta_series(P).pow(13);
  auto chi = DirichletChar::from_descriptor("5:1");
  auto R = rankin_stream(T, E, chi, 6, 2, 100, RankinVariant::R);
  auto Rt = rankin_stream(T, E, chi, 6, 2, 100, RankinVariant::R_tilde);
  EXPECT_EQ(R[1], CycloNum(T.c[1] * E.c[1]));
  for (i64 l : {2L, 3L, 6L, 7L, 11L, 13L, 17L, 21L, 33L})
    EXPECT_EQ(R[l], CycloNum(T.c[l] * E.c[l]) * chi.value(l)) << l;
  // R~ = (1 - chi^2(2) 2^{k1+k2-1} 4^{-s}) R
  DirStream euler(100, "euler");
  euler.at(1) = 1;
  euler.at(4) = -chi.pow(2).value(2) * CycloNum(rpow(2, 7));
  EXPECT_EQ(Rt, euler * R);
  // index d^2 m oracle
  for (i64 l = 1; l <= 100; ++l) {
    CycloNum s(0);
    for (i64 d = 1; d * d <= l; ++d)
      if (l % (d * d) == 0) {
        i64 m = l / (d * d);
        s += chi.pow(2).value(d) * CycloNum(rpow(d, 7)) * chi.value(m) * CycloNum(T.c[m] * E.c[m]);
      }
    EXPECT_EQ(R[l], s) << l;
  }
  EXPECT_THROW(rankin_stream(T, E, chi, 6, 2, 120, RankinVariant::R), std::out_of_range);
}

TEST(Streams, ShiftedL) {
  auto D = delta_series(50);
  auto chi2 = DirichletChar::from_descriptor("5:2");
  auto one = shifted_L_stream(D, chi2, {2}, 40);
  for (i64 m = 1; m <= 40; ++m) {
    i64 r = nt::isqrt(m);
    if (r * r != m) {
      EXPECT_TRUE(one[m].is_zero()) << m;
    }
  }
  EXPECT_EQ(one[4], CycloNum(D.c[2] * 4) * chi2.value(2));
  auto two = shifted_L_stream(D, DirichletChar(1), {1, 3}, 40);
  // m1^2 m2^2 = 36
  CycloNum s(0);
  for (i64 a : {1L, 2L, 3L, 6L}) s += CycloNum(D.c[a] * a * D.c[6 / a] * rpow(6 / a, 3));
  EXPECT_EQ(two[36], s);
}
