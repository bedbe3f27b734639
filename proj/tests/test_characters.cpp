#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "kmlift/characters.hpp"

using namespace kmlift;

TEST(CharGroupTest, Sizes) {
  EXPECT_EQ(CharGroup(1).size(), 1u);
  EXPECT_TRUE(CharGroup(1).chars()[0].is_trivial());
  CharGroup g5(5);
  std::multiset<int> orders;
  for (auto& c : g5.chars()) orders.insert(c.order());
  EXPECT_EQ(orders, (std::multiset<int>{1, 2, 4, 4}));
  EXPECT_EQ(CharGroup(35).size(), 24u);
  for (i64 N : {8, 12, 16, 24}) EXPECT_EQ(CharGroup(N).size(), static_cast<std::size_t>(nt::euler_phi(N)));
}

TEST(CharGroupTest, ClosedUnderProductAndConj) {
  CharGroup g(21);
  for (auto& a : g.chars()) {
    EXPECT_NE(std::find(g.chars().begin(), g.chars().end(), a.conj()), g.chars().end());
    for (auto& b : g.chars()) EXPECT_NE(std::find(g.chars().begin(), g.chars().end(), a * b), g.chars().end());
  }
}

TEST(CharGroupTest, SubgroupDm) {
  EXPECT_EQ(CharGroup(5).subgroup_Dm(4).size(), 4u);
  auto d74 = CharGroup(7).subgroup_Dm(4);
  ASSERT_EQ(d74.size(), 2u);
  for (auto& c : d74) EXPECT_LE(c.order(), 2);
  for (i64 N : {5, 7, 12, 35}) {
    auto d = CharGroup(N).subgroup_Dm(1);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_TRUE(d[0].is_trivial());
  }
  for (i64 p : {3, 5, 7, 11, 13})
    for (i64 m = 1; m <= 6; ++m) EXPECT_EQ(CharGroup(p).subgroup_Dm(m).size(), static_cast<std::size_t>(nt::gcd(m, p - 1)));
}

TEST(CharacterTest, MultiplicativeAndOrder) {
  for (auto& c : CharGroup(36).chars()) {
    for (i64 a = 0; a < 36; ++a)
      for (i64 b = 0; b < 36; ++b) EXPECT_EQ(c.value(a * b), c.value(a) * c.value(b));
    EXPECT_EQ(c.value(1), CycloNum(1));
    EXPECT_TRUE(c.pow(c.order()).is_trivial());
    for (int d = 1; d < c.order(); ++d) EXPECT_FALSE(c.pow(d).is_trivial());
    EXPECT_EQ(36 % c.conductor(), 0);
  }
}

TEST(CharacterTest, DescriptorRoundTrip) {
  for (i64 N : {1, 5, 8, 35, 40})
    for (auto& c : CharGroup(N).chars()) EXPECT_EQ(DirichletChar::from_descriptor(c.descriptor()), c);
  EXPECT_THROW(DirichletChar::from_descriptor("35:1"), std::invalid_argument);
}

TEST(CharacterTest, LocalComponents) {
  DirichletChar cubic7 = DirichletChar::from_descriptor("7:2");
  DirichletChar quartic5 = DirichletChar::from_descriptor("5:1");
  ASSERT_EQ(cubic7.order(), 3);
  ASSERT_EQ(quartic5.order(), 4);
  DirichletChar chi = cubic7.lift(35) * quartic5.lift(35);
  EXPECT_EQ(chi.local_component(7), cubic7);
  EXPECT_EQ(chi.local_component(5), quartic5);
  EXPECT_EQ(quartic5.local_component(5), quartic5);
  EXPECT_EQ(DirichletChar(15).local_component(3), DirichletChar(3));
  EXPECT_THROW(chi.local_component(3), std::invalid_argument);
  for (i64 N : {15, 35, 45, 60}) {
    for (auto& c : CharGroup(N).chars()) {
      for (i64 a = 1; a < N; ++a) {
        if (nt::gcd(a, N) != 1) continue;
        CycloNum prod(1);
        for (auto p : nt::prime_divisors(N)) prod *= c.local_component(p).value(a);
        EXPECT_EQ(prod, c.value(a));
      }
    }
  }
}

TEST(GaussSum, Examples) {
  EXPECT_EQ(gauss_sum(DirichletChar(1)), CycloNum(1));
  DirichletChar q5 = DirichletChar::kronecker_char(5);
  CycloNum expect = CycloNum::root_of_unity(5, 1) - CycloNum::root_of_unity(5, 2) - CycloNum::root_of_unity(5, 3) +
                    CycloNum::root_of_unity(5, 4);
  EXPECT_EQ(gauss_sum(q5), expect);
  EXPECT_EQ(gauss_sum(q5) * gauss_sum(q5), CycloNum(5));
}

TEST(GaussSum, NormIdentityPrimitive) {
  for (i64 N = 1; N <= 35; ++N) {
    for (auto& c : CharGroup(N).chars()) {
      if (!c.is_primitive()) continue;
      EXPECT_EQ(gauss_sum(c) * gauss_sum(c.conj()), CycloNum(c.parity() * N)) << c.descriptor();
    }
  }
}

TEST(JacobiSum, Examples) {
  DirichletChar q5 = DirichletChar::kronecker_char(5);
  EXPECT_EQ(jacobi_sum(q5, q5), CycloNum(-1));
  for (i64 p : {5, 7, 11})
    for (auto& eta : CharGroup(p).chars()) {
      if (!eta.is_trivial()) {
        EXPECT_EQ(jacobi_sum(DirichletChar(p), eta), CycloNum(-1));
      }
    }
  DirichletChar cubic = DirichletChar::from_descriptor("7:2");
  CycloNum J = jacobi_sum(cubic, cubic);
  EXPECT_EQ(J * J.conj(), CycloNum(7));
}

TEST(JacobiSum, GaussQuotient) {
  for (i64 p : {3, 5, 7, 11, 13}) {
    for (auto& a : CharGroup(p).chars())
      for (auto& b : CharGroup(p).chars()) {
        if (a.is_trivial() || b.is_trivial() || (a * b).is_trivial()) continue;
        EXPECT_EQ(jacobi_sum(a, b), gauss_sum(a) * gauss_sum(b) / gauss_sum(a * b));
      }
  }
}

TEST(RootsOfUnity, Order) {
  i64 u = find_primitive_root_of_unity_mod(5, 4);
  EXPECT_TRUE(u == 2 || u == 3);
  EXPECT_EQ(find_primitive_root_of_unity_mod(7, 2), 6);
  EXPECT_EQ(find_primitive_root_of_unity_mod(11, 1), 1);
  EXPECT_EQ(nt::multiplicative_order(find_primitive_root_of_unity_mod(13, 6), 13), 6);
  EXPECT_THROW(find_primitive_root_of_unity_mod(7, 4), std::invalid_argument);
}

TEST(QuadSymbols, LegendreEuler) {
  for (i64 p : {3, 5, 7, 11, 13})
    for (i64 a = 0; a < p; ++a) {
      int expect = a == 0 ? 0 : (nt::powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1);
      EXPECT_EQ(legendre(a, p), expect);
      EXPECT_EQ(jacobi_symbol(a, p), expect);
    }
}

TEST(QuadSymbols, JacobiMultiplicative) {
  for (i64 a = -20; a <= 20; ++a)
    for (i64 m : {3, 5, 7, 9, 15})
      for (i64 n : {3, 5, 11, 21}) EXPECT_EQ(jacobi_symbol(a, m * n), jacobi_symbol(a, m) * jacobi_symbol(a, n));
}

TEST(QuadSymbols, KroneckerCharacter) {
  for (i64 D : {-3, -4, 5, -7, 8, -8, 12, 13, -15, 21, 24}) {
    DirichletChar c = DirichletChar::kronecker_char(D);
    EXPECT_EQ(c.order(), 2);
    EXPECT_EQ(c.conductor(), D < 0 ? -D : D);
  }
}

TEST(QuadSymbols, HilbertBimultiplicativeSymmetric) {
  std::vector<Rational> vals{rat(1), rat(-1), rat(2), rat(3), rat(-5), rat(6), rat(7, 3), rat(-12, 5), rat(10)};
  for (i64 p : std::vector<i64>{kInfinitePlace, 2, 3, 5, 7}) {
    for (auto& a : vals)
      for (auto& b : vals) {
        EXPECT_EQ(hilbert_symbol(a, b, p), hilbert_symbol(b, a, p));
        for (auto& c : vals) EXPECT_EQ(hilbert_symbol(a, b * c, p), hilbert_symbol(a, b, p) * hilbert_symbol(a, c, p));
      }
  }
}

TEST(QuadSymbols, HilbertReciprocity) {
  std::vector<Rational> vals{rat(-1), rat(2), rat(3), rat(-5), rat(6), rat(7, 3), rat(-12, 5), rat(10), rat(11)};
  for (auto& a : vals)
    for (auto& b : vals) {
      int prod = hilbert_symbol(a, b, kInfinitePlace);
      for (i64 p : {2, 3, 5, 7, 11}) prod *= hilbert_symbol(a, b, p);
      EXPECT_EQ(prod, 1);
    }
}
