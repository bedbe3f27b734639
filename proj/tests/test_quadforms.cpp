#include <gtest/gtest.h>

#include <random>

#include "kmlift/quadforms/classes.hpp"

using namespace kmlift;

namespace {

IntMat random_sl_word(int n, std::mt19937_64& rng, int len) {
  IntMat U = identity_mat(n);
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2);
  for (int s = 0; s < len; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    IntMat E = identity_mat(n);
    E[i * n + j] = coef(rng);
    U = mat_mul(U, E, n);
  }
  return U;
}

// reduced binary forms a x^2 + b xy + c y^2 of discriminant -D
long binary_class_number(i64 D) {
  long h = 0;
  for (i64 a = 1; 3 * a * a <= D; ++a)
    for (i64 b = -a + 1; b <= a; ++b) {
      if ((b * b + D) % (4 * a)) continue;
      i64 c = (b * b + D) / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      ++h;
    }
  return h;
}

}  // namespace

TEST(Reduce, FixedAndRoundTrip) {
  auto I4 = lattices::twice_identity(4);
  EXPECT_EQ(greedy_reduce(I4).gram, I4);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    IntMat U = random_sl_word(2, rng, 12);
    auto G = lattices::A2().transform(U);
    auto r = greedy_reduce(G);
    EXPECT_EQ(r.gram.at(0, 0), 2);
    EXPECT_EQ(r.gram.at(1, 1), 2);
    EXPECT_EQ(std::abs(r.gram.at(0, 1)), 1);
    EXPECT_EQ(G.transform(r.U), r.gram);
    EXPECT_EQ(det_exact(r.U, 2), 1);
  }
  for (int t = 0; t < 20; ++t) {
    IntMat U = random_sl_word(4, rng, 10);
    auto G = lattices::D4().orthogonal_sum(GramMat()).transform(U);
    auto r = greedy_reduce(G);
    EXPECT_TRUE(is_greedy_reduced(r.gram));
    EXPECT_EQ(G.transform(r.U), r.gram);
    EXPECT_EQ(det_exact(r.U, 4), 1);
  }
}

TEST(Reduce, RejectsIndefinite) { EXPECT_THROW(greedy_reduce(GramMat(2, {2, 3, 3, 2})), std::invalid_argument); }

TEST(Isometry, WitnessIsProper) {
  std::mt19937_64 rng(11);
  for (auto G : {lattices::A2A2(), lattices::D4(), GramMat(3, {2, 1, 0, 1, 4, 1, 0, 1, 6})}) {
    IntMat U = random_sl_word(G.n, rng, 8);
    auto H = G.transform(U);
    auto w = isometry_test(G, H);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(G.transform(*w), H);
    EXPECT_EQ(det_exact(*w, G.n), 1);
  }
  EXPECT_FALSE(isometry_test(lattices::A2A2(), lattices::D4()).has_value());
  EXPECT_FALSE(isometry_test(lattices::twice_identity(4), GramMat(4, {2, 1, 0, 0, 1, 2, 0, 0, 0, 0, 4, 2, 0, 0, 2, 6}))
                   .has_value());
}

TEST(Isometry, ProperOnlyClassesSplit) {
  // x^2 + xy + 6y^2 style forms: [4,1;1,6] and [4,-1;-1,6] are improperly but not properly equivalent
  GramMat a(2, {4, 2, 2, 6}), b(2, {4, -2, -2, 6});
  EXPECT_TRUE(isometry_test(a, b).has_value());
  GramMat c(2, {4, 1, 1, 6}), d(2, {4, -1, -1, 6});
  EXPECT_FALSE(isometry_test(c, d).has_value());
}

TEST(AutomorphismCount, Examples) {
  EXPECT_EQ(automorphism_count(lattices::twice_identity(4)).proper, 192);
  EXPECT_EQ(automorphism_count(lattices::twice_identity(4)).full, 384);
  EXPECT_EQ(automorphism_count(lattices::A2()).proper, 6);
  EXPECT_EQ(automorphism_count(lattices::D4()).full, 1152);
  EXPECT_EQ(automorphism_count(lattices::D4()).proper, 576);
  EXPECT_EQ(automorphism_count(lattices::A2A2()).full, 288);
  EXPECT_EQ(automorphism_count(lattices::A2A2()).proper, 144);
  EXPECT_EQ(automorphism_count(lattices::D4(), 3).proper, 1);
  EXPECT_EQ(automorphism_count(lattices::twice_identity(4), 2).proper, 8);
  EXPECT_EQ(automorphism_count(lattices::twice_identity(4), 3).proper, 1);
}

TEST(EnumerateClasses, Binary) {
  auto L3 = enumerate_classes(2, 3);
  ASSERT_EQ(L3.classes.size(), 1u);
  EXPECT_EQ(L3.classes[0].gram, lattices::A2());
  auto L4 = enumerate_classes(2, 4);
  ASSERT_EQ(L4.classes.size(), 2u);
  EXPECT_EQ(L4.classes[1].gram, lattices::twice_identity(2));
  auto L = enumerate_classes(2, 80);
  std::map<i64, long> count;
  for (auto& c : L.classes) ++count[to_long(c.gram.det())];
  for (i64 D = 3; D <= 80; ++D) EXPECT_EQ(count[D], binary_class_number(D)) << D;
}

TEST(EnumerateClasses, QuaternaryContainsRootLattices) {
  auto L = enumerate_classes(4, 16);
  auto find = [&](const GramMat& G) {
    for (auto& c : L.classes)
      if (isometry_test(c.gram, G)) return true;
    return false;
  };
  EXPECT_TRUE(find(lattices::D4()));
  EXPECT_TRUE(find(lattices::A2A2()));
  EXPECT_TRUE(find(lattices::twice_identity(4)));
  for (std::size_t i = 0; i < L.classes.size(); ++i)
    for (std::size_t j = i + 1; j < L.classes.size(); ++j)
      EXPECT_FALSE(isometry_test(L.classes[i].gram, L.classes[j].gram).has_value());
  // no even quaternary lattice has det 1, 2 or 3
  for (auto& c : L.classes) EXPECT_GE(c.gram.det(), 4);
}

TEST(EnumerateClasses, StableUnderMargin) {
  for (auto [n, B] : {std::pair{2, 60}, std::pair{4, 25}}) {
    auto a = enumerate_classes(n, B, 1), b = enumerate_classes(n, B, 2);
    ASSERT_EQ(a.classes.size(), b.classes.size());
    for (std::size_t i = 0; i < a.classes.size(); ++i) EXPECT_EQ(a.classes[i].gram, b.classes[i].gram);
  }
}

TEST(DiscSplit, Examples) {
  auto s = disc_split(lattices::D4());
  EXPECT_EQ(s.d, 1);
  EXPECT_EQ(s.f, 2);
  s = disc_split(lattices::A2A2());
  EXPECT_EQ(s.d, 1);
  EXPECT_EQ(s.f, 3);
  s = disc_split(lattices::A2());
  EXPECT_EQ(s.d, -3);
  EXPECT_EQ(s.f, 1);
  EXPECT_THROW(disc_split(GramMat(3, {2, 1, 0, 1, 2, 1, 0, 1, 2})), std::invalid_argument);
  for (i64 D = 3; D < 200; ++D) {
    if (nt::mod(-D, 4) == 2 || nt::mod(-D, 4) == 3) continue;
    auto t = disc_split_value(-D);
    EXPECT_EQ(t.d * t.f * t.f, -D);
    EXPECT_TRUE(nt::mod(t.d, 4) == 0 || nt::mod(t.d, 4) == 1);
    EXPECT_LT(t.d, 0);
    i64 odd = t.d;
    while (odd % 2 == 0) odd /= 2;
    EXPECT_TRUE(nt::is_squarefree(odd < 0 ? -odd : odd));
    if (t.d % 4 == 0) {
      EXPECT_TRUE(nt::mod(t.d / 4, 4) == 2 || nt::mod(t.d / 4, 4) == 3);
    }
  }
}

TEST(Hasse, ExamplesAndReciprocity) {
  std::vector<Rational> I2 = {1, 0, 0, 1};
  for (i64 p : {2, 3, 5, 7}) EXPECT_EQ(hasse_invariant(I2, 2, p), 1);
  std::vector<Rational> H = {1, 0, 0, -1};
  EXPECT_EQ(hasse_invariant(H, 2, 2), -1);
  EXPECT_EQ(hasse_invariant(H, 2, 3), 1);
  std::vector<Rational> Z = {0, 1, 1, 0};
  EXPECT_EQ(hasse_invariant(Z, 2, 3), hasse_invariant(H, 2, 3));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(-30, 30);
  for (int t = 0; t < 40; ++t) {
    int n = 3;
    std::vector<Rational> A(9, 0);
    std::vector<i64> primes = {2};
    for (int i = 0; i < n; ++i) {
      int a = 0;
      while (a == 0) a = pick(rng);
      A[i * n + i] = a;
      for (auto p : nt::prime_divisors(std::abs(a))) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    int prod = hasse_invariant(A, n, kInfinitePlace);
    for (auto p : primes) prod *= hasse_invariant(A, n, p);
    EXPECT_EQ(prod, 1);
  }
}

TEST(Genus, DiscriminantForms) {
  EXPECT_TRUE(same_genus(lattices::D4(), lattices::D4().transform(IntMat{1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1})));
  EXPECT_FALSE(same_genus(GramMat(2, {2, 1, 1, 4}), GramMat(2, {2, 0, 0, 4})));
  // discriminant -23: three proper classes in one genus
  GramMat a(2, {2, 1, 1, 12}), b(2, {4, 1, 1, 6}), c(2, {4, -1, -1, 6});
  EXPECT_TRUE(same_genus(a, b));
  EXPECT_TRUE(same_genus(b, c));
  // discriminant -20: two genera
  EXPECT_FALSE(same_genus(GramMat(2, {2, 0, 0, 10}), GramMat(2, {4, 2, 2, 6})));
}

TEST(Genus, ClassListGenusIndex) {
  auto L = enumerate_classes(4, 16);
  for (auto& c : L.classes)
    if (c.gram.det() == 4) {
      EXPECT_EQ(c.genus, 0);
    }
  auto g = genus_classes(L, lattices::D4());
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(genus_mass_from_classes(L, lattices::D4()), rat(1, 576));
}
