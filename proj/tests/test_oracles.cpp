#include <gtest/gtest.h>

#include "oracles.hpp"
#include "scalarkit/artinian.hpp"
#include "scalarkit/scalar_rings.hpp"

using namespace scalarkit;

// The oracles check themselves on known values before they are trusted.
TEST(Oracle, FreeSeriesKnownTerms) {
  auto b = oracle::free_bch(3);
  EXPECT_EQ(b.terms["x"], 1);
  EXPECT_EQ(b.terms["xy"], oracle::Q(1, 2));
  EXPECT_EQ(b.terms["yx"], oracle::Q(-1, 2));
  EXPECT_EQ(b.terms["xxy"], oracle::Q(1, 12));
  auto n = oracle::nested_bracket("xy", 2);
  EXPECT_EQ(n.terms["xy"], 1);
  EXPECT_EQ(n.terms["yx"], -1);
}

TEST(Oracle, SmithInvariants) {
  std::vector<std::vector<mpz_class>> a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  auto inv = oracle::smith_invariants(a);
  ASSERT_EQ(inv.size(), 3u);
  EXPECT_EQ(inv[0], 2);
  EXPECT_EQ(inv[1], 6);
  EXPECT_EQ(inv[2], 12);
}

TEST(Oracle, SmithAgreesWithLibrary) {
  Rng rng(5);
  Domain z = Domain::integers();
  for (int t = 0; t < 40; ++t) {
    std::size_t r = 1 + rng.below(3), c = 1 + rng.below(3);
    Matrix m(z, r, c);
    std::vector<std::vector<mpz_class>> a(r, std::vector<mpz_class>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        long v = rng.range(-9, 9);
        m(i, j) = Scalar(z, v);
        a[i][j] = v;
      }
    auto snf = smith_normal_form(m);
    auto inv = oracle::smith_invariants(a);
    for (std::size_t k = 0; k < std::min(r, c); ++k) {
      mpz_class expect = k < inv.size() ? abs(inv[k]) : mpz_class(0);
      EXPECT_EQ(abs(snf.D(k, k).value().get_num()), expect);
    }
  }
}

TEST(Oracle, ScalarRingEnumerationAgrees) {
  Rng rng(99);
  int checked = 0;
  for (long p : {2L, 3L}) {
    Domain d = Domain::prime_field(p);
    while (checked < (p == 2 ? 15 : 25)) {
      std::size_t n = 1 + rng.below(p == 2 ? 3 : 2), m = 1 + rng.below(2);
      oracle::GFTensor g{p, n, m, {}};
      std::vector<std::vector<Vector>> table(n, std::vector<Vector>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < m; ++k) {
            long v = rng.below(3) == 0 ? static_cast<long>(rng.below(static_cast<std::uint64_t>(p))) : 0;
            g.t.push_back(v);
            table[i][j].emplace_back(d, Rational(v));
          }
      bilinear::BilinearMap f(modules::ModuleDesc::vector_space(d, n), modules::ModuleDesc::vector_space(d, m), table);
      if (oracle::brute_two_sided_kernel(g) != 1) continue;
      auto report = scalar_rings::p_of_f(f);
      auto brute = oracle::brute_scalar_ring(g);
      std::size_t expected = 1;
      for (std::size_t k = 0; k < report.algebra.dim(); ++k) expected *= static_cast<std::size_t>(p);
      EXPECT_EQ(brute.size(), expected);
      for (const auto& a : brute) {
        Matrix mat(d, n, n);
        for (std::size_t i = 0; i < n * n; ++i) mat(i / n, i % n) = Scalar(d, Rational(a[i]));
        EXPECT_TRUE(report.algebra.contains(mat));
      }
      ++checked;
    }
  }
}

TEST(Oracle, IdempotentsAndNilpotents) {
  // GF(2)[x]/(x^2 + x): two idempotent factors; GF(2)[x]/(x^2 + 1): local, nilradical of size 2
  Domain f2 = Domain::prime_field(2);
  for (auto [c0, c1, idem, nil] : std::vector<std::tuple<long, long, std::size_t, std::size_t>>{{0, 1, 4, 1}, {1, 0, 2, 2}}) {
    auto alg = artinian::CommutativeAlgebra::polynomial_quotient(Poly::from_rationals(f2, {c0, c1, 1}));
    oracle::GFTensor g{2, 2, 2, {}};
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) g.t.push_back(alg.table()[i][j][k].value().get_num().get_si());
    EXPECT_EQ(oracle::brute_idempotents(g), idem);
    EXPECT_EQ(oracle::brute_nilpotents(g), nil);
    EXPECT_EQ(std::size_t{1} << artinian::local_decomposition(alg).size(), idem);
    std::size_t rad = 1;
    for (std::size_t k = 0; k < artinian::radical(alg).size(); ++k) rad *= 2;
    EXPECT_EQ(rad, nil);
  }
}
