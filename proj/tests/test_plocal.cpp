#include <gtest/gtest.h>

#include "kmlift/plocal.hpp"

using namespace kmlift;

namespace {

GramMat diag_gram(std::vector<i64> d) {
  int n = static_cast<int>(d.size());
  IntMat g(n * n, 0);
  for (int i = 0; i < n; ++i) g[i * n + i] = d[i];
  return GramMat(n, g);
}

}  // namespace

TEST(XiTilde, Examples) {
  EXPECT_EQ(xi_tilde(5, 4), 1);
  EXPECT_EQ(xi_tilde(5, 2), -1);
  EXPECT_EQ(xi_tilde(5, 5), 0);
  EXPECT_EQ(xi_tilde(5, rat(4, 25)), 1);
  EXPECT_THROW(xi_tilde(5, 0), std::invalid_argument);
}

TEST(XiTilde, MatchesKroneckerOnFundamentalDiscriminants) {
  for (long D : {-3L, -4L, -7L, -8L, 5L, 8L, 12L, -15L, 13L, -20L, 24L})
    for (i64 p : {2L, 3L, 5L, 7L, 11L, 13L}) EXPECT_EQ(xi_tilde(p, D), kronecker(D, p)) << D << " " << p;
}

TEST(Jordan, Examples) {
  auto J = jordan_decompose(lattices::twice_identity(4), 3);
  ASSERT_EQ(J.blocks.size(), 1u);
  EXPECT_EQ(J.blocks[0].scale, 0);
  EXPECT_EQ(J.blocks[0].dim, 4);
  EXPECT_EQ(J.blocks[0].det_class, 1);

  auto A = jordan_decompose(lattices::A2(), 3);
  ASSERT_EQ(A.blocks.size(), 2u);
  EXPECT_EQ(A.blocks[0].scale, 0);
  EXPECT_EQ(A.blocks[1].scale, 1);
  EXPECT_EQ(A.blocks[0].dim, 1);
  EXPECT_EQ(A.blocks[1].dim, 1);

  auto D = jordan_decompose(diag_gram({2, 18}), 3);
  ASSERT_EQ(D.blocks.size(), 2u);
  EXPECT_EQ(D.blocks[0].scale, 0);
  EXPECT_EQ(D.blocks[1].scale, 2);
  EXPECT_THROW(jordan_decompose(lattices::A2(), 2), std::invalid_argument);
}

TEST(Jordan, RealizationRoundTrip) {
  for (i64 p : {3L, 5L})
    for (int n : {2, 4})
      for (auto& J : enumerate_zp_classes(n, p, 1, 3)) {
        GramMat G = jordan_realize(J);
        EXPECT_EQ(jordan_decompose(G, p), J) << J.to_string();
      }
}

TEST(ZpClasses, Examples) {
  auto one = enumerate_zp_classes(2, 3, 1, 0);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].blocks[0].dim, 2);
  for (auto& J : enumerate_zp_classes(2, 3, 1, 2)) {
    EXPECT_EQ(J.det_valuation() % 2, 0);
    EXPECT_LE(J.det_valuation(), 2);
  }
  auto four = enumerate_zp_classes(4, 3, 1, 2);
  EXPECT_FALSE(four.empty());
  for (auto& J : four) EXPECT_EQ(J.size(), 4);
  EXPECT_THROW(enumerate_zp_classes(2, 2, 1, 1), std::invalid_argument);
}

TEST(LocalDensity, OneDimensional) {
  auto G = diag_gram({2});
  EXPECT_EQ(local_density_brute(G, 3).value, 1);
  EXPECT_EQ(local_density_closed(G, 3), 1);
}

TEST(LocalDensity, BruteEqualsClosedOddPrimes) {
  std::vector<GramMat> forms = {lattices::A2(),      lattices::twice_identity(2), diag_gram({2, 6}),
                                diag_gram({2, 18}),  GramMat(2, {4, 1, 1, 4}),    GramMat(2, {6, 3, 3, 6}),
                                diag_gram({2, 2, 6}), diag_gram({2, 6, 6})};
  for (auto& G : forms)
    for (i64 p : {3L, 5L}) {
      EXPECT_EQ(local_density_brute(G, p).value, local_density_closed(G, p)) << G.to_string() << " p=" << p;
    }
}

TEST(LocalDensity, GoodPrimeValue) {
  // (-1)^{n/2} det = -4: a square mod 5, a nonsquare mod 3
  auto G = lattices::twice_identity(2);
  EXPECT_EQ(local_density_closed(G, 5), 1 - rat(1, 5));
  EXPECT_EQ(local_density_closed(G, 3), 1 + rat(1, 3));
  EXPECT_EQ(local_density_brute(G, 5).value, 1 - rat(1, 5));
  EXPECT_EQ(local_density_brute(G, 3).value, 1 + rat(1, 3));
}

TEST(LocalDensity, DyadicValues) {
  EXPECT_EQ(local_density_brute(lattices::A2(), 2).value, rat(3, 2));
  EXPECT_EQ(local_density_brute(lattices::twice_identity(2), 2).value, 8);
  EXPECT_EQ(local_density_brute(lattices::D4(), 2).value, 36);
  EXPECT_EQ(local_density_brute(lattices::A2A2(), 2).value, rat(9, 16));
  EXPECT_EQ(local_density_brute(lattices::twice_identity(4), 2).value, 384);
  EXPECT_THROW(local_density_closed(lattices::D4(), 2), std::invalid_argument);
}

TEST(LocalDensity, StableAboveDeterminantValuation) {
  for (auto G : {diag_gram({2, 8}), diag_gram({2, 4}), GramMat(2, {6, 2, 2, 6}), lattices::A2()}) {
    i64 det = to_long(G.det());
    int a = nt::valuation(det, 2) + 1;
    EXPECT_EQ(local_density_at_level(G, 2, a), local_density_at_level(G, 2, a + 1)) << G.to_string();
    EXPECT_EQ(local_density_at_level(G, 2, a), local_density_brute(G, 2).value) << G.to_string();
  }
}

TEST(LocalDensity, BudgetIsEnforced) {
  EXPECT_THROW(local_density_brute(lattices::twice_identity(4), 2, Budget{1e3}), BudgetExceeded);
}

TEST(SiegelSeries, GoodPrimeIsOne) {
  auto S = siegel_series(lattices::D4(), 3, SiegelMode::oracle);
  EXPECT_EQ(S.F, RatPoly(Rational(1)));
  auto I = siegel_series(lattices::D4(), 5, SiegelMode::interpolation);
  EXPECT_EQ(I.F, RatPoly(Rational(1)));
}

TEST(SiegelSeries, OracleEqualsInterpolationOddPrimes) {
  std::vector<GramMat> forms = {lattices::A2(), diag_gram({2, 18}), diag_gram({2, 6}), GramMat(2, {6, 3, 3, 6}),
                                diag_gram({2, 54}), lattices::A2A2(), diag_gram({2, 2, 2, 18}), diag_gram({2, 2, 6, 6})};
  for (auto& G : forms) {
    auto I = siegel_series_interpolation(G, 3);
    int J = static_cast<int>(I.F.degree().value_or(0)) + 1;
    if (G.n == 4) J = std::min(J, 1);
    auto O = siegel_series_oracle(G, 3, J);
    for (int j = 0; j < O.known_terms; ++j) EXPECT_EQ(O.F[j], I.F[j]) << G.to_string() << " X^" << j;
    EXPECT_TRUE(I.symmetric) << G.to_string();
    EXPECT_TRUE(I.complete) << G.to_string();
    EXPECT_EQ(I.F[0], 1);
  }
}

TEST(SiegelSeries, A2AtThreeIsConstant) {
  // nu_3(f) = 0, so F has degree 0
  auto I = siegel_series_interpolation(lattices::A2(), 3);
  EXPECT_EQ(I.nu_f, 0);
  EXPECT_EQ(I.F, RatPoly(Rational(1)));
}

TEST(SiegelSeries, DegreeAndSymmetry) {
  auto I = siegel_series_interpolation(diag_gram({2, 18}), 3);
  EXPECT_EQ(I.nu_f, 1);
  EXPECT_EQ(I.F.degree().value_or(0), 2u);
  auto L = I.tilde();
  EXPECT_EQ(L.inverted(), L);
}

TEST(SiegelSeries, D4AtTwo) {
  auto O = siegel_series_oracle(lattices::D4(), 2, 2);
  EXPECT_EQ(O.F, RatPoly(std::vector<Rational>{1, -12, 32}));
  EXPECT_TRUE(O.symmetric);
  auto L = O.tilde();
  EXPECT_EQ(L.coeff(1), QuadSurd(1));
  EXPECT_EQ(L.coeff(-1), QuadSurd(1));
  EXPECT_EQ(L.coeff(0), QuadSurd(0, rat(-3, 2), 2));
}

TEST(PSeries, BruteEqualsClosedGrid) {
  for (int n : {2, 4})
    for (i64 p : {3L, 5L})
      for (Rational d0 : {Rational(1), Rational(least_nonresidue(p)), Rational(p)})
        for (Omega w : {Omega::iota, Omega::eps}) {
          auto b = p_series(n, p, d0, w, 4, PSeriesMode::brute);
          auto c = p_series(n, p, d0, w, 4, PSeriesMode::closed);
          EXPECT_TRUE(b.series == c.series) << n << " " << p << " " << d0 << " " << omega_name(w);
          EXPECT_TRUE(b.parity_ok());
          EXPECT_TRUE(c.parity_ok());
        }
}

TEST(PSeries, RamifiedEpsilonVanishes) {
  auto c = p_series(2, 3, 3, Omega::eps, 4, PSeriesMode::closed);
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(c.series[i].is_zero());
}

TEST(Mass, RootLatticeGenera) {
  auto L = enumerate_classes(4, 16);
  for (auto G : {lattices::D4(), lattices::A2A2(), lattices::twice_identity(4)}) {
    auto t = siegel_mass(G);
    Rational m = genus_mass_from_classes(L, G);
    EXPECT_EQ(t.value, m) << G.to_string();
    EXPECT_EQ(fit_mass_two_power(m, t.raw), kMassTwoPower);
  }
  EXPECT_EQ(mass_formula(lattices::D4()), rat(1, 576));
}

TEST(Mass, BinaryGenera) {
  auto L = enumerate_classes(2, 40);
  EXPECT_EQ(mass_formula(lattices::A2()), genus_mass_from_classes(L, lattices::A2()));
  for (auto& c : L.classes) EXPECT_EQ(mass_formula(c.gram), genus_mass_from_classes(L, c.gram)) << c.gram.to_string();
}

TEST(Mass, FitTwoPower) {
  EXPECT_EQ(fit_mass_two_power(rat(1, 4), rat(1, 8)), 1);
  EXPECT_EQ(fit_mass_two_power(rat(3, 4), rat(3, 2)), -1);
  EXPECT_EQ(fit_mass_two_power(rat(1, 3), rat(1, 2)), std::nullopt);
}
