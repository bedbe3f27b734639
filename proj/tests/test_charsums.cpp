#include <gtest/gtest.h>

#include "kmlift/charsums.hpp"

using namespace kmlift;

namespace {

CycloNum cyc(int level, std::vector<long> raw) {
  std::vector<Rational> r;
  for (long x : raw) r.emplace_back(x);
  return CycloNum(level, r);
}

SymMatModN diag(std::vector<i64> d, i64 p) {
  SymMatModN S(static_cast<int>(d.size()), p);
  for (std::size_t i = 0; i < d.size(); ++i) S.set(static_cast<int>(i), static_cast<int>(i), d[i]);
  return S;
}

DirichletChar chr(const std::string& d) { return DirichletChar::from_descriptor(d); }

}  // namespace

TEST(CountA, Examples) {
  EXPECT_EQ(count_A_brute(SymMatModN::identity(2, 3), diag({1}, 3)), 4);
  EXPECT_EQ(count_A_closed(SymMatModN::identity(2, 3), diag({1}, 3)), 4);
  EXPECT_EQ(count_A_display(SymMatModN::identity(2, 3), 1), 4);
  EXPECT_EQ(count_A_brute(diag({1}, 3), diag({0}, 3)), 1);
  EXPECT_EQ(count_A0_brute(SymMatModN::identity(2, 3)), 1);
  EXPECT_EQ(count_A0_closed(SymMatModN::identity(2, 3)), 1);
  EXPECT_EQ(count_A0_brute(SymMatModN::identity(2, 5)), 9);
  EXPECT_EQ(count_A0_closed(SymMatModN::identity(2, 5)), 9);
  EXPECT_EQ(count_A0_brute(diag({1}, 3)), 1);
}

TEST(CountA, GeneralFormulaGrid) {
  for (i64 p : {3, 5, 7})
    for (int m = 1; m <= 3; ++m)
      for (int r = 1; r <= m; ++r) {
        i64 total = nt::ipow(p - 1, m);
        for (i64 code = 0; code < total; code += 3) {
          std::vector<i64> d(m);
          i64 t = code;
          for (auto& x : d) {
            x = 1 + t % (p - 1);
            t /= p - 1;
          }
          SymMatModN S = diag(d, p), T = diag(std::vector<i64>(d.begin(), d.begin() + r), p);
          EXPECT_EQ(count_A_brute(S, T), count_A_closed(S, T)) << S.to_string() << " " << T.to_string();
        }
      }
  EXPECT_THROW(count_A_closed(diag({1, 0}, 5), diag({1}, 5)), std::domain_error);
  EXPECT_THROW(count_A_brute(diag({1}, 2), diag({1}, 2)), std::domain_error);
}

TEST(CountA, OddDisplayDiscrepancy) {
  auto checks = lemma_5_1_display_checks();
  ASSERT_EQ(checks.size(), 2u);
  EXPECT_EQ(checks[0].brute, 2);
  EXPECT_EQ(checks[0].general, 2);
  EXPECT_EQ(checks[0].display, 0);
  EXPECT_EQ(checks[1].brute, 6);
  EXPECT_EQ(checks[1].general, 6);
  EXPECT_EQ(checks[1].display, 12);
}

TEST(Gamma, Examples) {
  EXPECT_EQ(gamma_const(2, 3, GammaMode::printed), 2);
  EXPECT_EQ(gamma_const(2, 3, GammaMode::corrected), 4);
  EXPECT_EQ(gamma_const(3, 5, GammaMode::printed), 120);
  EXPECT_EQ(gamma_const(3, 5, GammaMode::corrected), 120);
  EXPECT_EQ(gamma_const(1, 7, GammaMode::corrected), 1);
}

TEST(Gamma, FiberCountOracle) {
  // #{X in SL_m(F_p) : X X^t = 1_m} = count_R(1_m, m) / count_M(1_m, m) restricted to Z = 1
  auto hist = sl_trace_histogram_prime(SymMatModN::identity(2, 3));
  EXPECT_EQ(hist[2], 4);
  EXPECT_EQ(count_M(SymMatModN::identity(2, 3), 2), 1);
}

TEST(CountRM, Examples) {
  EXPECT_EQ(count_R(diag({1}, 5), 1), 1);
  EXPECT_EQ(count_R(diag({1}, 5), 4), 0);
  EXPECT_EQ(count_M(diag({3}, 5), 3), 1);
  EXPECT_EQ(count_M(diag({3}, 5), 2), 0);
  EXPECT_EQ(count_M(SymMatModN::identity(2, 3), 0), 4);
  EXPECT_EQ(count_R(SymMatModN::identity(2, 3), 0), 16);
  EXPECT_EQ(count_R(SymMatModN::identity(2, 3), 2), 4);
  EXPECT_EQ(count_M(diag({1, 2}, 5), 1), 6);
  EXPECT_EQ(count_R(diag({1, 2}, 5), 1), 24);
  EXPECT_THROW(count_M(SymMatModN::identity(2, 5), 1, Budget{10}), BudgetExceeded);
}

TEST(CountRM, Proportionality) {
  auto rep = run_prop_5_2({{2, 3}, {2, 5}, {3, 3}});
  EXPECT_TRUE(rep.ok()) << rep.to_text();
  EXPECT_LT(rep.printed_matches, rep.grid_size);
}

TEST(CountRM, NonDiagonalMatchesDiagonalized) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 6; ++t) {
    SymMatModN A = detail::random_sym(rng, 3, 5);
    if (det_mod_p(A) == 0) continue;
    auto D = diagonalize_mod_p(A);
    EXPECT_EQ(sl_trace_histogram_prime(A), sl_trace_histogram_prime(diag(D.d, 5))) << A.to_string();
  }
}

TEST(QuadCharSum, Examples) {
  auto quartic = chr("5:1");
  EXPECT_EQ(quad_char_sum_brute(quartic, diag({1}, 5), 1), quad_char_sum_closed(quartic, diag({1}, 5), 1));
  auto cubic = chr("7:2");
  CycloNum b = quad_char_sum_brute(cubic, SymMatModN::identity(2, 7), 3);
  EXPECT_EQ(b, quad_char_sum_closed(cubic, SymMatModN::identity(2, 7), 3));
  EXPECT_EQ(b, CycloNum(7 * legendre(-1, 7)) * cubic.value(3));
  EXPECT_THROW(quad_char_sum_closed(chr("5:2"), diag({1}, 5), 1), std::domain_error);
  EXPECT_THROW(quad_char_sum_closed(DirichletChar(5), diag({1, 1}, 5), 1), std::domain_error);
}

TEST(QuadCharSum, GridAndScaling) {
  auto rep = run_lemma_5_3({{5, 7}, 3, 2});
  EXPECT_TRUE(rep.ok()) << rep.to_text();
  auto cubic = chr("7:2");
  for (int r = 1; r <= 3; ++r) {
    SymMatModN S = diag(std::vector<i64>(r, 1), 7);
    EXPECT_EQ(quad_char_sum_brute(cubic, S, 6),
              cubic.value(2) * CycloNum(r % 2 ? legendre(2, 7) : 1) * quad_char_sum_brute(cubic, S, 3));
  }
}

TEST(BorderedDetSum, Examples) {
  auto quartic = chr("5:1"), cubic = chr("7:2");
  for (auto v : {Variant::printed, Variant::corrected}) {
    EXPECT_EQ(bordered_det_sum_brute(quartic, diag({1}, 5), 1), bordered_det_sum_closed(quartic, diag({1}, 5), 1, v));
    EXPECT_EQ(bordered_det_sum_brute(quartic, diag({0}, 5), 3), bordered_det_sum_closed(quartic, diag({0}, 5), 3, v));
  }
  EXPECT_EQ(bordered_det_sum_brute(cubic, SymMatModN::identity(2, 7), 2),
            bordered_det_sum_closed(cubic, SymMatModN::identity(2, 7), 2, Variant::corrected));
}

TEST(BorderedDetSum, PrintedSignFailsForThreeModFour) {
  auto cubic = chr("7:2");
  SymMatModN Z1 = diag({1}, 7);
  CycloNum b = bordered_det_sum_brute(cubic, Z1, 1);
  EXPECT_EQ(b, bordered_det_sum_closed(cubic, Z1, 1, Variant::corrected));
  EXPECT_NE(b, bordered_det_sum_closed(cubic, Z1, 1, Variant::printed));
  auto rep = run_prop_5_4({{5, 7, 11}, 3, 2});
  EXPECT_TRUE(rep.ok()) << rep.to_text();
}

TEST(ImJm, Examples) {
  for (i64 p : {5, 7})
    for (auto& chi : CharGroup(p).chars())
      for (auto& eta : CharGroup(p).chars()) {
        EXPECT_EQ(Im_brute(chi, eta, 1), CycloNum((chi * eta).is_trivial() ? p - 1 : 0));
        EXPECT_EQ(Jm_brute(chi, eta, 1), jacobi_sum(chi, eta));
      }
  auto quartic = chr("5:1");
  auto rho5 = DirichletChar::jacobi_char(5);
  EXPECT_EQ(Jm_brute(quartic * rho5, quartic, 2), cyc(4, {-5, -10}));
  EXPECT_EQ(Jm_chi(quartic, 2), cyc(4, {-5, -10}));
  auto cubic = chr("7:2");
  EXPECT_EQ(Im_brute(cubic, cubic, 3), Im_closed(cubic, cubic, 3));
  EXPECT_EQ(Jm_chi(cubic, 3), cyc(3, {-343, -343}));
  EXPECT_EQ(Jm_chi(cubic, 4), cyc(3, {0, 16807}));
  EXPECT_THROW(Im_closed(chr("5:2"), quartic, 2), std::domain_error);
}

TEST(ImJm, ClosedAndRecursionGrid) {
  auto reps = run_prop_5_7_5_8({{5, 7, 11}, 3, 0});
  for (auto& r : reps) EXPECT_TRUE(r.ok()) << r.to_text();
  EXPECT_LT(reps[1].printed_matches, reps[1].grid_size);
  auto t = run_thm_5_9({{5, 7}, 5, 0}, 3);
  EXPECT_TRUE(t.ok()) << t.to_text();
  t = run_thm_5_9({{5}, 4, 0}, 4);
  EXPECT_TRUE(t.ok()) << t.to_text();
  EXPECT_LT(t.printed_matches, t.grid_size);
}

TEST(ImJm, CompositeFactorization) {
  auto chi = chr("35:1,2");
  EXPECT_EQ(Jm_chi(chi, 2), cyc(12, {0, -70, 35, 70}));
  EXPECT_EQ(Jm_chi(chi, 2), Jm_brute(chi * DirichletChar::jacobi_char(35), chi, 2));
  EXPECT_EQ(Jm_chi(chi, 2), Jm_chi(chi.local_component(5), 2) * Jm_chi(chi.local_component(7), 2));
}

TEST(ImJm, JacobiProductAndNonvanishing) {
  auto rep = run_prop_5_10({5, 7, 11, 13});
  EXPECT_TRUE(rep.ok()) << rep.to_text();
  EXPECT_EQ(rep.grid_size, 2 + 4 + 8 + 10);
  auto nz = run_jm_nonvanishing({5, 7, 35}, 4);
  EXPECT_TRUE(nz.ok()) << nz.to_text();
}

TEST(Hsum, Examples) {
  auto quad5 = chr("5:2"), cubic = chr("7:2"), quartic = chr("5:1");
  SymMatModN I25 = SymMatModN::identity(2, 5), I27 = SymMatModN::identity(2, 7);
  EXPECT_EQ(h_sum_brute_sl(I25, quad5), -40);
  EXPECT_EQ(h_sum_closed(I25, quad5), -40);
  EXPECT_EQ(h_sum_brute_sl(I27, cubic), cyc(3, {112, 112}));
  EXPECT_EQ(h_sum_closed(I27, cubic), cyc(3, {112, 112}));
  EXPECT_EQ(h_sum_closed(SymMatModN::identity(3, 5), quartic), cyc(4, {-3000, -6000}));
  Det1TableCache cache;
  EXPECT_TRUE(h_sum_brute_sym(SymMatModN::identity(4, 5), quartic, cache).is_zero());
  EXPECT_TRUE(h_sum_closed(SymMatModN::identity(4, 5), quartic).is_zero());
  EXPECT_EQ(h_sum_brute_sym(I27, cubic, cache), h_sum_brute_sl(I27, cubic));
}

TEST(Hsum, VariantsAndConjugation) {
  auto cubic = chr("7:2");
  SymMatModN A = SymMatModN::identity(2, 7);
  CycloNum b = h_sum_brute_sl(A, cubic);
  EXPECT_EQ(b, h_sum_closed(A, cubic, {GammaMode::corrected, HsumForm::printed_plain}));
  EXPECT_NE(b, h_sum_closed(A, cubic, {GammaMode::corrected, HsumForm::printed_conj}));
  EXPECT_NE(b, h_sum_closed(A, cubic, {GammaMode::printed, HsumForm::printed_plain}));
  EXPECT_EQ(h_sum_brute_sl(A, cubic.conj()), b.conj());
  EXPECT_THROW(h_sum_closed(A, DirichletChar(7)), std::domain_error);
}

TEST(Hsum, Composite) {
  auto chi = chr("35:2,2");
  SymMatModN A = SymMatModN::identity(2, 35);
  CycloNum b = h_sum_brute_sl(A, chi);
  EXPECT_EQ(b, cyc(3, {-4480, -4480}));
  EXPECT_EQ(b, h_sum_closed(A, chi));
  Det1TableCache cache;
  EXPECT_EQ(b, h_sum_brute_sym(A, chi, cache));
}

TEST(Hsum, Grid) {
  HsumGrid g{{5, 7}, {2, 3}, 3};
  auto rep = run_thm_5_5(g);
  EXPECT_TRUE(rep.ok()) << rep.to_text();
}

TEST(Hsum, HalfIntegralDeterminant) {
  auto cubic = chr("7:2");
  EXPECT_EQ(chi_det_halfintegral(cubic, 4, 2), 1);
  EXPECT_EQ(chi_det_halfintegral(cubic, 3, 2), cubic.conj().value(4) * cubic.value(3));
  EXPECT_EQ(chi_det_halfintegral(cubic, 12, 2), cubic.conj().value(4) * cubic.value(12));
  EXPECT_EQ(chi_det_halfintegral(cubic, 4, 3), cubic.conj().value(4) * cubic.value(2));
  EXPECT_EQ(chi_det_halfintegral(DirichletChar(7), 12, 2), 1);
  EXPECT_THROW(chi_det_halfintegral(chr("8:1,0"), 4, 2), std::domain_error);
  auto A = halfintegral_mod({2, 1, 1, 2}, 2, 7);
  EXPECT_EQ(A.at(0, 0), 1);
  EXPECT_EQ(A.at(0, 1), 4);
}
