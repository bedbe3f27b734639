#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "kmlift/liftkm.hpp"
#include "kmlift/quadforms.hpp"

using namespace kmlift;
using namespace kmlift::lattices;

namespace {

struct Flagship {
  PlusForm F;
  ClassList L;
  IkedaCoeffTable T;
};

Flagship& flagship() {
  static Flagship fs = [] {
    Flagship f;
    f.F = build_plus_eigenform(8, 4, 200);
    f.L = enumerate_classes(4, 40);
    f.T = ikeda_table(f.L, f.F);
    return f;
  }();
  return fs;
}

Det1TableCache& det1_cache() {
  static Det1TableCache cache;
  return cache;
}

// p^{kappa nu/2} F~(beta), beta = alpha / p^{kappa/2}, alpha a root of x^2 - c x + p^kappa
std::complex<double> satake_numeric(const std::map<int, double>& Ft, double p, double c, int kappa, int nu, int root) {
  std::complex<double> disc = std::sqrt(std::complex<double>(c * c - 4 * std::pow(p, kappa)));
  std::complex<double> alpha = (c + (root ? -1.0 : 1.0) * disc) / 2.0;
  std::complex<double> beta = alpha / std::pow(p, kappa / 2.0);
  std::complex<double> v = 0;
  for (auto [j, a] : Ft) v += a * std::pow(beta, j);
  return v * std::pow(p, kappa * nu / 2.0);
}

IntMat random_unimodular(std::mt19937_64& rng, int n) {
  IntMat U = identity_mat(n);
  std::uniform_int_distribution<int> pick(0, n - 1), coef(-2, 2);
  for (int step = 0; step < 12; ++step) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    IntMat E = identity_mat(n);
    E[i * n + j] = coef(rng);
    U = mat_mul(U, E, n);
  }
  return U;
}

}  // namespace

TEST(PlusForm, ShimuraAudit) {
  auto& F = flagship().F;
  EXPECT_EQ(F.h.twice_weight, 13);
  EXPECT_TRUE(F.normalized);
  EXPECT_EQ(F.coeff(1), 1);
  EXPECT_EQ(F.hecke.at(2), -24);
  EXPECT_EQ(F.hecke.at(3), 252);
  EXPECT_EQ(F.hecke.at(5), 4830);
  EXPECT_EQ(F.h.precision(), 200);
  EXPECT_TRUE(F.h.plus_support_ok());
  EXPECT_EQ(F.coeff(4), -56);
  EXPECT_EQ(F.coeff(5), 120);
  EXPECT_EQ(F.coeff(8), -240);
  EXPECT_EQ(F.coeff(9), 9);
}

TEST(PlusForm, RejectsBadParameters) {
  EXPECT_THROW(build_plus_eigenform(7, 4, 50), std::invalid_argument);
  EXPECT_THROW(build_plus_eigenform(2, 4, 50), std::invalid_argument);
}

TEST(Satake, ConstantAndLinear) {
  Laurent<QuadSurd> one(QuadSurd(1));
  EXPECT_EQ(satake_symmetric_eval(one, 3, 252, 8, 4, 0), 1);
  Laurent<QuadSurd> lin = Laurent<QuadSurd>::monomial(1, 1) + Laurent<QuadSurd>::monomial(1, -1);
  // p^{kappa/2} (beta + 1/beta) = c_p
  EXPECT_EQ(satake_symmetric_eval(lin, 3, 252, 8, 4, 1), 252);
  Laurent<QuadSurd> asym = Laurent<QuadSurd>::monomial(1, 1);
  EXPECT_THROW(satake_symmetric_eval(asym, 3, 252, 8, 4, 1), std::domain_error);
}

TEST(Satake, TwoPathsAndRootSwap) {
  // D4 at p = 2: F~ = X^-1 - (3/2) sqrt2 + X
  Laurent<QuadSurd> Ft = Laurent<QuadSurd>::monomial(1, -1) + Laurent<QuadSurd>::monomial(1, 1) +
                         Laurent<QuadSurd>(QuadSurd(0, rat(-3, 2), 2));
  Rational exact = satake_symmetric_eval(Ft, 2, -24, 8, 4, 1);
  EXPECT_EQ(exact, -120);
  std::map<int, double> num{{-1, 1.0}, {0, -1.5 * std::sqrt(2.0)}, {1, 1.0}};
  for (int root : {0, 1}) {
    auto v = satake_numeric(num, 2, -24, 11, 1, root);
    EXPECT_NEAR(v.real(), -120.0, 1e-6);
    EXPECT_NEAR(v.imag(), 0.0, 1e-6);
  }
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    int nu = 1 + trial % 3;
    Laurent<QuadSurd> G;
    std::map<int, double> g;
    for (int j = nu % 2; j <= nu; j += 2) {
      int a = coef(rng);
      if (!a) continue;
      G.add(j, QuadSurd(a));
      g[j] = a;
      if (j) {
        G.add(-j, QuadSurd(a));
        g[-j] = a;
      }
    }
    if (G.is_zero()) continue;
    Rational ex = satake_symmetric_eval(G, 3, 252, 8, 4, nu);
    double scale = std::max(1.0, std::abs(ex.get_d()));
    for (int root : {0, 1}) {
      auto v = satake_numeric(g, 3, 252, 11, nu, root);
      EXPECT_NEAR(v.real() / scale, ex.get_d() / scale, 1e-9) << trial;
      EXPECT_NEAR(v.imag() / scale, 0.0, 1e-9) << trial;
    }
  }
}

TEST(Ikeda, EmptyProduct) {
  auto& fs = flagship();
  for (const auto& row : fs.T.rows) {
    if (row.coeff.excluded || row.coeff.split.f != 1) continue;
    i64 ad = row.coeff.split.d < 0 ? -row.coeff.split.d : row.coeff.split.d;
    EXPECT_EQ(row.coeff.value, fs.F.coeff(ad)) << row.cls.gram.to_string();
    EXPECT_TRUE(row.coeff.local.empty());
  }
}

TEST(Ikeda, FlagshipValues) {
  auto& F = flagship().F;
  EXPECT_EQ(ikeda_coeff(A2A2(), F).value, -720);
  EXPECT_EQ(ikeda_coeff(D4(), F).value, -120);
  auto c = ikeda_coeff(twice_identity(4), F);
  EXPECT_TRUE(c.excluded);
  EXPECT_FALSE(c.reason.empty());
  EXPECT_EQ(flagship().T.exclusions.size(), 7u);
}

TEST(Ikeda, GenusInvarianceUnderConjugation) {
  auto& F = flagship().F;
  std::mt19937_64 rng(20);
  std::vector<GramMat> forms = {A2A2(), GramMat(4, {2, 1, 1, 1, 1, 2, 1, 1, 1, 1, 4, -1, 1, 1, -1, 4}), D4()};
  std::vector<int> reps = {9, 9, 2};
  for (std::size_t f = 0; f < forms.size(); ++f) {
    Rational base = ikeda_coeff(forms[f], F).value;
    for (int r = 0; r < reps[f]; ++r) {
      GramMat H = forms[f].transform(random_unimodular(rng, 4));
      EXPECT_EQ(ikeda_coeff(H, F).value, base) << H.to_string();
    }
  }
}

TEST(KMStream, SecondKind) {
  auto& fs = flagship();
  auto S = km_stream_second(fs.T, DirichletChar(1), 3);
  EXPECT_TRUE(S.coeff.empty());
  auto L = km_stream_second(fs.T, DirichletChar(1), 40);
  // A2 + A2 is the only class of det 9
  EXPECT_EQ(L.at(9), CycloNum(rat(-720, 144)));
  EXPECT_EQ(L.at(4), CycloNum(rat(-120, 576)));
  EXPECT_EQ(L.excluded, (std::set<i64>{16, 32}));
  auto chi = DirichletChar::from_descriptor("5:1");
  auto Lc = km_stream_second(fs.T, chi, 40);
  EXPECT_TRUE(Lc.at(5).is_zero());
  EXPECT_EQ(Lc.at(9), chi.value(9) * L.at(9));
  EXPECT_THROW(km_stream_second(fs.T, chi, 41), std::invalid_argument);
}

TEST(KMStream, FirstKindConjugation) {
  auto& fs = flagship();
  auto chi = DirichletChar::from_descriptor("7:2");
  FirstKindOptions o;
  o.mode = HsumMode::closed;
  auto a = km_stream_first(fs.T, chi, 40, det1_cache(), o);
  auto b = km_stream_first(fs.T, chi.conj(), 40, det1_cache(), o);
  for (i64 D = 1; D <= 40; ++D) EXPECT_EQ(b.at(D), a.at(D).conj()) << D;
  EXPECT_THROW(km_stream_first(fs.T, DirichletChar::kronecker_char(8), 40, det1_cache(), o), std::domain_error);
}

TEST(LiftIdentity, FlagshipUntwisted) {
  auto& fs = flagship();
  auto r = verify_lift_identity(fs.T, fs.F, DirichletChar(1));
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.shift, 0);
  EXPECT_EQ(r.fit.c, rat(-1, 48));
  EXPECT_EQ(r.fit.d, rat(-1, 576));
  EXPECT_EQ(r.fit.d, -r.fit.c * cohen_H(2, 1) * fs.F.coeff(1));
  EXPECT_EQ(r.fit.checked.size(), 35u);
  EXPECT_TRUE(r.fit.residuals.empty());
}

TEST(LiftIdentity, FlagshipQuarticMod5) {
  auto& fs = flagship();
  for (const char* d : {"5:1", "5:3", "5:2"}) {
    auto r = verify_lift_identity(fs.T, fs.F, DirichletChar::from_descriptor(d));
    EXPECT_TRUE(r.pass()) << d;
    EXPECT_EQ(r.shift, 0) << d;
    EXPECT_EQ(r.fit.c, rat(-1, 48)) << d;
    EXPECT_EQ(r.fit.d, rat(-1, 576)) << d;
  }
}

TEST(LiftIdentity, WrongShiftLeavesResiduals) {
  auto& fs = flagship();
  LiftIdentityOptions o;
  o.shifts = {2};
  auto r = verify_lift_identity(fs.T, fs.F, DirichletChar(1), o);
  EXPECT_FALSE(r.pass());
  ASSERT_EQ(r.trials.size(), 1u);
}

TEST(FitTwoTerm, SolvesAndReports) {
  auto x1 = [](i64 D) { return CycloNum(Rational(D)); };
  auto x2 = [](i64 D) { return CycloNum(Rational(D * D)); };
  auto lhs = [](i64 D) { return CycloNum(rat(3, 2) * D - 2 * D * D + (D == 7 ? 1 : 0)); };
  auto f = fit_two_term(lhs, x1, x2, {1, 2, 3, 7});
  EXPECT_TRUE(f.solved);
  EXPECT_EQ(f.c, rat(3, 2));
  EXPECT_EQ(f.d, -2);
  ASSERT_EQ(f.residuals.size(), 1u);
  EXPECT_EQ(f.residuals[0].index, 7);
  auto g = fit_two_term(lhs, x1, x1, {1, 2, 3});
  EXPECT_FALSE(g.solved);
}

TEST(FirstKind, ZeroBranchMod5) {
  auto& fs = flagship();
  for (const char* d : {"5:1", "5:2", "5:3"}) {
    auto chi = DirichletChar::from_descriptor(d);
    auto r = verify_first_kind(fs.T, fs.F, chi, det1_cache(), {40, 2, {}, std::make_pair(rat(-1, 48), rat(-1, 576))});
    EXPECT_TRUE(r.zero_branch) << d;
    EXPECT_EQ(r.failing_primes, std::vector<i64>{5});
    EXPECT_TRUE(r.zero_residuals.empty()) << d;
    EXPECT_EQ(r.spot_mismatches, 0);
    EXPECT_TRUE(r.pass()) << d;
  }
}

TEST(FirstKind, CubicMod7) {
  auto& fs = flagship();
  auto chi = DirichletChar::from_descriptor("7:2");
  auto r = verify_first_kind(fs.T, fs.F, chi, det1_cache());
  EXPECT_FALSE(r.zero_branch);
  EXPECT_EQ(r.psi.size(), 2u);
  EXPECT_EQ(r.c_n, rat(-1, 48));
  EXPECT_EQ(r.spot_mismatches, 0);
  EXPECT_TRUE(r.pass());
  auto* v = r.variant(JacobiWeights::corrected);
  ASSERT_NE(v, nullptr);
  EXPECT_TRUE(v->residuals_finite.empty());
  EXPECT_TRUE(v->fit.residuals.empty());
  EXPECT_EQ(v->fit.c, 16464);
  EXPECT_EQ(v->fit.d, 1372);
  EXPECT_EQ(v->ratio_c, v->constant);
  EXPECT_EQ(v->ratio_d, v->constant);
  EXPECT_EQ(v->constant, -790272);
  auto* p = r.variant(JacobiWeights::printed);
  ASSERT_NE(p, nullptr);
  EXPECT_FALSE(p->residuals_finite.empty());
}

TEST(FirstKind, RChiConsistency) {
  auto& fs = flagship();
  auto chi = DirichletChar::from_descriptor("7:2");
  FirstKindOptions o;
  o.mode = HsumMode::closed;
  auto direct = km_stream_first(fs.T, chi, 40, det1_cache(), o);
  auto R = r_chi_assemble(fs.F, chi, 40, JacobiWeights::corrected);
  auto M = m_chi_assemble(fs.F, chi, 40, JacobiWeights::corrected);
  for (i64 D : scope_indices(40, 2, direct.excluded))
    EXPECT_EQ(direct.at(D), CycloNum(Rational(16464)) * R[D] + CycloNum(Rational(1372)) * M[D]) << D;
  auto Rc = r_chi_assemble(fs.F, chi.conj(), 40);
  auto Rp = r_chi_assemble(fs.F, chi, 40);
  EXPECT_EQ(Rc, Rp.conj());
  EXPECT_THROW(r_chi_assemble(fs.F, DirichletChar::from_descriptor("5:2"), 40), std::domain_error);
}
