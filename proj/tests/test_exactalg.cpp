#include <gtest/gtest.h>

#include "kmlift/exactalg/linalg.hpp"

#include <random>

#include "kmlift/exactalg.hpp"

using namespace kmlift;

TEST(Cyclo, NormalizeSmall) {
  EXPECT_EQ(CycloNum::root_of_unity(4, 2), CycloNum(-1));
  EXPECT_EQ(CycloNum::root_of_unity(4, 2).sparse(), (std::map<int, Rational>{{0, Rational(-1)}}));
  EXPECT_EQ(CycloNum::root_of_unity(3, 1) + CycloNum::root_of_unity(3, 2), CycloNum(-1));
  CycloNum s;
  for (int e = 0; e < 5; ++e) s += CycloNum::root_of_unity(5, e);
  EXPECT_TRUE(s.is_zero());
}

TEST(Cyclo, NormalizeIdempotent) {
  CycloNum z = CycloNum::root_of_unity(12, 7) * CycloNum(rat(3, 2)) + CycloNum::root_of_unity(12, 5);
  CycloNum again(12, z.coeffs());
  EXPECT_EQ(again.coeffs(), z.coeffs());
}

namespace {
CycloNum random_cyclo(std::mt19937& rng, int L) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<Rational> raw(L);
  for (auto& x : raw) x = rat(d(rng), 1 + std::abs(d(rng)));
  return CycloNum(L, raw);
}
}  // namespace

TEST(Cyclo, FieldAxiomsRandomized) {
  std::mt19937 rng(7);
  for (int L : {3, 4, 5, 7, 12, 84}) {
    for (int t = 0; t < 6; ++t) {
      CycloNum a = random_cyclo(rng, L), b = random_cyclo(rng, L);
      EXPECT_EQ((a + b) - b, a);
      if (!b.is_zero()) {
        EXPECT_EQ((a * b) / b, a);
      }
      EXPECT_EQ(a * b, b * a);
    }
  }
}

TEST(Cyclo, LevelRoundTrip) {
  std::mt19937 rng(11);
  for (int L : {3, 4, 5, 12}) {
    CycloNum a = random_cyclo(rng, L);
    CycloNum up = a.at_level(L * 7);
    auto down = up.try_at_level(L);
    ASSERT_TRUE(down.has_value());
    EXPECT_EQ(down->coeffs(), a.coeffs());
    EXPECT_EQ(down->level(), L);
  }
  EXPECT_FALSE(CycloNum::root_of_unity(12, 1).try_at_level(4).has_value());
  EXPECT_EQ(CycloNum::root_of_unity(12, 3).minimal_level().level(), 4);
}

TEST(Cyclo, ConjugateAndComplex) {
  CycloNum z = CycloNum::root_of_unity(5, 1);
  EXPECT_EQ(z * z.conj(), CycloNum(1));
  EXPECT_NEAR(z.to_complex().imag(), std::sin(2 * M_PI / 5), 1e-12);
}

TEST(Series, Products) {
  using S = TruncSeries<Rational>;
  S a("t", 3, {1, 1}), b("t", 3, {1, -1});
  EXPECT_EQ(a * b, S("t", 3, {1, 0, -1}));
  S geo("t", 5, {1, 1, 1, 1, 1}), one_minus("t", 5, {1, -1});
  EXPECT_EQ(geo * one_minus, S("t", 5, {1}));
  EXPECT_THROW(S("t", 3) * S("u", 3), std::invalid_argument);
}

TEST(Series, RationalExpand) {
  using S = TruncSeries<Rational>;
  S one("t", 4, {1});
  EXPECT_EQ(S::expand_rational(one, {{Rational(1), 1}}), S("t", 4, {1, 1, 1, 1}));
  S one5("t", 5, {1});
  EXPECT_EQ(S::expand_rational(one5, {{Rational(1), 1}, {Rational(-1), 1}}), S("t", 5, {1, 0, 1, 0, 1}));
  EXPECT_THROW(S::expand_rational(one, {{Rational(1), 0}}), std::invalid_argument);
}

TEST(Series, Associative) {
  using S = TruncSeries<Rational>;
  S a("t", 6, {1, 2, 3}), b("t", 6, {0, rat(1, 2), 1, 4}), c("t", 6, {-1, 0, 0, 0, 0, 7});
  EXPECT_EQ((a * b) * c, a * (b * c));
  EXPECT_EQ(a * b, b * a);
}

TEST(Poly, ZeroDegreeSentinel) {
  IntPolyX z;
  EXPECT_FALSE(z.degree().has_value());
  IntPolyX p(std::vector<Integer>{1, 2, 0, 0});
  EXPECT_EQ(*p.degree(), 1u);
}

TEST(Poly, Interpolation) {
  std::vector<Rational> xs{1, 2, 3, 4}, ys;
  RatPoly f(std::vector<Rational>{rat(1, 3), 0, 2, -1});
  for (auto& x : xs) ys.push_back(f.eval(x));
  EXPECT_EQ(lagrange_interpolate(xs, ys), f);
}

TEST(SymLaurentTest, Symmetry) {
  Laurent<Rational> L = Laurent<Rational>::monomial(2, 1) + Laurent<Rational>::monomial(2, -1) + Laurent<Rational>(5);
  auto s = SymLaurent<Rational>::from_laurent(L);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->coeff(1), Rational(2));
  EXPECT_EQ(s->coeff(0), Rational(5));
  EXPECT_FALSE(SymLaurent<Rational>::from_laurent(Laurent<Rational>::monomial(1, 1)).has_value());
  auto sq = *s * *s;
  EXPECT_EQ(sq.to_laurent(), L * L);
}

TEST(QuadSurdTest, Arithmetic) {
  QuadSurd r5(0, 1, 5);
  EXPECT_EQ(r5 * r5, QuadSurd(5));
  EXPECT_EQ(QuadSurd::sqrt_prime_power(3, 3), QuadSurd(0, 3, 3));
  EXPECT_EQ(QuadSurd::sqrt_prime_power(3, -1) * QuadSurd::sqrt_prime_power(3, 1), QuadSurd(1));
  QuadSurd x(rat(1, 2), 3, 5);
  EXPECT_EQ(x / x, QuadSurd(1));
  EXPECT_THROW(QuadSurd(0, 1, 2) + QuadSurd(0, 1, 3), std::domain_error);
}

TEST(Linalg, SolveUnique) {
  DenseMat<Rational> M = {{1, 2}, {3, 4}, {5, 6}};
  auto x = solve_unique(M, {Rational(5), Rational(11), Rational(17)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], 1);
  EXPECT_EQ((*x)[1], 2);
  EXPECT_FALSE(solve_unique(M, {Rational(5), Rational(11), Rational(18)}));
  DenseMat<Rational> R = {{1, 1}, {2, 2}};
  EXPECT_FALSE(solve_unique(R, {Rational(1), Rational(2)}));
  EXPECT_FALSE(solve_unique(R, {Rational(1), Rational(3)}));
}

TEST(Linalg, Nullspace) {
  DenseMat<Rational> M = {{1, 2, 3}, {2, 4, 6}};
  auto k = nullspace(M, 3);
  ASSERT_EQ(k.size(), 2u);
  for (auto& v : k) EXPECT_EQ(v[0] + 2 * v[1] + 3 * v[2], 0);
}
