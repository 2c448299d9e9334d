#include <gtest/gtest.h>

#include "scalarkit/matrix.hpp"
#include "scalarkit/poly.hpp"

using namespace scalarkit;

namespace {

Matrix q_matrix(std::size_t r, std::size_t c, std::vector<Rational> v) {
  return Matrix::from_values(Domain::rationals(), r, c, v);
}

Matrix z_matrix(std::size_t r, std::size_t c, std::vector<Rational> v) {
  return Matrix::from_values(Domain::integers(), r, c, v);
}

Poly q_poly(std::vector<Rational> c) { return Poly::from_rationals(Domain::rationals(), c); }

Matrix random_matrix(Rng& rng, const Domain& d, std::size_t r, std::size_t c) {
  Matrix m(d, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.scalar(d, 4);
  return m;
}

}  // namespace

TEST(Rref, IdentityIsReduced) {
  auto r = rref(Matrix::identity(Domain::rationals(), 2));
  EXPECT_EQ(r.reduced, Matrix::identity(Domain::rationals(), 2));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.rank, 2u);
}

TEST(Rref, SingleRowAlreadyReduced) {
  auto r = rref(q_matrix(1, 2, {1, 1}));
  EXPECT_EQ(r.reduced, q_matrix(1, 2, {1, 1}));
  EXPECT_EQ(r.rank, 1u);
}

TEST(Rref, PrimeFieldRowReduction) {
  Domain f5 = Domain::prime_field(5);
  auto r = rref(Matrix::from_values(f5, 2, 2, {2, 4, 1, 2}));
  EXPECT_EQ(r.reduced, Matrix::from_values(f5, 2, 2, {1, 2, 0, 0}));
  EXPECT_EQ(r.rank, 1u);
}

TEST(Rref, RejectsIntegers) {
  EXPECT_THROW(rref(z_matrix(1, 1, {2})), Error);
}

TEST(Rref, IdempotentAndRowEquivalent) {
  Rng rng(11);
  for (const Domain& d : {Domain::rationals(), Domain::prime_field(3), Domain::prime_field(7)}) {
    for (int t = 0; t < 30; ++t) {
      Matrix m = random_matrix(rng, d, 1 + rng.below(4), 1 + rng.below(4));
      auto r = rref(m);
      EXPECT_EQ(rref(r.reduced).reduced, r.reduced);
      EXPECT_EQ(r.rank, rank(m.transpose()));
      // every row of m lies in the row space of the reduced form and conversely
      auto rows = span_basis(d, m.cols(), m.row_vectors());
      for (const auto& row : r.reduced.row_vectors())
        if (!is_zero(row)) EXPECT_TRUE(coordinates_in(rows, row).has_value());
    }
  }
}

TEST(Kernel, ZeroMapKernelIsEverything) {
  EXPECT_EQ(kernel_basis(q_matrix(2, 2, {0, 0, 0, 0})).cols(), 2u);
}

TEST(Kernel, SumFunctional) {
  Matrix m = q_matrix(1, 2, {1, 1});
  Matrix k = kernel_basis(m);
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_TRUE(is_zero(m * k.column(0)));
  EXPECT_EQ(k(0, 0), -k(1, 0));
  EXPECT_FALSE(k(0, 0).is_zero());
}

TEST(Kernel, InjectiveOverGF3) {
  EXPECT_EQ(kernel_basis(Matrix::identity(Domain::prime_field(3), 3)).cols(), 0u);
}

TEST(Solve, Examples) {
  Domain q = Domain::rationals();
  auto s = solve(Matrix::identity(q, 2), Vector{Scalar(q, 1L), Scalar(q, 2L)});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, (Vector{Scalar(q, 1L), Scalar(q, 2L)}));
  auto h = solve(q_matrix(1, 2, {1, 1}), Vector{Scalar(q, 0L)});
  ASSERT_TRUE(h);
  EXPECT_TRUE(is_zero(h->particular));
  EXPECT_EQ(h->kernel.cols(), 1u);
  EXPECT_FALSE(solve(q_matrix(1, 1, {0}), Vector{Scalar(q, 1L)}).has_value());
}

TEST(Solve, RoundTripRandom) {
  Rng rng(5);
  for (const Domain& d : {Domain::rationals(), Domain::prime_field(2), Domain::prime_field(5)}) {
    for (int t = 0; t < 40; ++t) {
      Matrix m = random_matrix(rng, d, 1 + rng.below(4), 1 + rng.below(4));
      Vector x;
      for (std::size_t i = 0; i < m.cols(); ++i) x.push_back(rng.scalar(d, 5));
      Vector b = m * x;
      auto s = solve(m, b);
      ASSERT_TRUE(s);
      EXPECT_EQ(m * s->particular, b);
      for (const auto& k : s->kernel.column_vectors()) EXPECT_TRUE(is_zero(m * k));
    }
  }
}

TEST(Smith, Examples) {
  auto id = smith_normal_form(Matrix::identity(Domain::integers(), 2));
  EXPECT_EQ(id.D, Matrix::identity(Domain::integers(), 2));
  auto s = smith_normal_form(z_matrix(2, 2, {2, 0, 0, 3}));
  EXPECT_EQ(s.D, z_matrix(2, 2, {1, 0, 0, 6}));
  EXPECT_EQ(s.U * z_matrix(2, 2, {2, 0, 0, 3}) * s.V, s.D);
  EXPECT_EQ(smith_normal_form(z_matrix(1, 1, {2})).D, z_matrix(1, 1, {2}));
}

TEST(Smith, RandomRemultiplication) {
  Rng rng(17);
  Domain z = Domain::integers();
  for (int t = 0; t < 60; ++t) {
    std::size_t r = 1 + rng.below(4), c = 1 + rng.below(4);
    Matrix m(z, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(z, rng.range(-6, 6));
    auto s = smith_normal_form(m);
    EXPECT_EQ(s.U * m * s.V, s.D);
    EXPECT_EQ(abs(integer_determinant(s.U)), 1);
    EXPECT_EQ(abs(integer_determinant(s.V)), 1);
    Integer prev = 1;
    bool zero_seen = false;
    for (std::size_t i = 0; i < std::min(r, c); ++i) {
      Integer d = s.D(i, i).value().get_num();
      EXPECT_GE(d, 0);
      if (zero_seen) EXPECT_EQ(d, 0);
      if (d == 0) {
        zero_seen = true;
        continue;
      }
      EXPECT_EQ(d % prev, 0);
      prev = d;
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) EXPECT_TRUE(s.D(i, j).is_zero());
  }
}

TEST(Smith, IntegerKernelAndSolve) {
  Rng rng(23);
  Domain z = Domain::integers();
  for (int t = 0; t < 40; ++t) {
    std::size_t r = 1 + rng.below(3), c = 1 + rng.below(4);
    Matrix m(z, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(z, rng.range(-5, 5));
    for (const auto& k : integer_kernel(m).column_vectors()) EXPECT_TRUE(is_zero(m * k));
    Vector x;
    for (std::size_t j = 0; j < c; ++j) x.emplace_back(z, rng.range(-4, 4));
    auto s = integer_solve(m, m * x);
    ASSERT_TRUE(s);
    EXPECT_EQ(m * *s, m * x);
  }
  EXPECT_FALSE(integer_solve(z_matrix(1, 1, {2}), Vector{Scalar(z, 1L)}).has_value());
}

TEST(Factor, DifferenceOfSquares) {
  auto f = poly_factor(q_poly({-1, 0, 1}));
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].factor, q_poly({-1, 1}));
  EXPECT_EQ(f.factors[1].factor, q_poly({1, 1}));
  EXPECT_EQ(expand(f), q_poly({-1, 0, 1}));
}

TEST(Factor, SquareOverGF2) {
  Domain f2 = Domain::prime_field(2);
  auto f = poly_factor(Poly::from_rationals(f2, {1, 0, 1}));
  ASSERT_EQ(f.factors.size(), 1u);
  EXPECT_EQ(f.factors[0].factor, Poly::from_rationals(f2, {1, 1}));
  EXPECT_EQ(f.factors[0].multiplicity, 2u);
}

TEST(Factor, LinearIsIrreducible) {
  auto f = poly_factor(q_poly({0, 1}));
  ASSERT_EQ(f.factors.size(), 1u);
  EXPECT_TRUE(is_irreducible(q_poly({0, 1})));
}

TEST(Factor, QuarticSplitsIntoQuadratics) {
  // (x^2 - 2)(x^2 + x + 3)
  Poly p = q_poly({-2, 0, 1}) * q_poly({3, 1, 1});
  auto f = poly_factor(p);
  EXPECT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(expand(f), p);
  EXPECT_FALSE(is_irreducible(p));
  EXPECT_TRUE(is_irreducible(q_poly({-2, 0, 1})));
}

TEST(Factor, RandomFiniteFieldRoundTrip) {
  Rng rng(31);
  for (long p : {2L, 3L, 5L}) {
    Domain d = Domain::prime_field(p);
    for (int t = 0; t < 25; ++t) {
      std::vector<Rational> c;
      int deg = 1 + static_cast<int>(rng.below(7));
      for (int i = 0; i < deg; ++i) c.push_back(rng.range(0, p - 1));
      c.push_back(1);
      Poly poly = Poly::from_rationals(d, c);
      auto f = poly_factor(poly);
      EXPECT_EQ(expand(f), poly);
      for (const auto& pf : f.factors) {
        EXPECT_TRUE(roots_in_field(pf.factor).empty() || pf.factor.degree() == 1);
        // gcd with x^{p^k} - x is trivial below the factor degree
        Poly x = Poly::x(d);
        for (int k = 1; 2 * k <= pf.factor.degree(); ++k) {
          Integer e = 1;
          for (int i = 0; i < k; ++i) e *= p;
          Poly g = gcd(powmod(x, e, pf.factor) - x, pf.factor);
          EXPECT_EQ(g.degree(), 0);
        }
      }
    }
  }
}

TEST(Factor, ExtensionSplitsMinimalPolynomial) {
  Domain k = Domain::extension(Domain::rationals(), {-2, 0, 1});
  auto f = poly_factor(Poly::from_rationals(k, {-2, 0, 1}));
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(expand(f), Poly::from_rationals(k, {-2, 0, 1}));
}

TEST(Factor, IntegersUnsupported) {
  try {
    poly_factor(Poly::from_rationals(Domain::integers(), {1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedDomain);
  }
}

TEST(Scalar, ExtensionInverse) {
  Domain k = Domain::extension(Domain::rationals(), {-2, 0, 1});
  Scalar a = Scalar::generator(k);
  Scalar x = a + Scalar(k, 1L);
  EXPECT_TRUE((x * x.inverse()).is_one());
  EXPECT_EQ(a * a, Scalar(k, 2L));
}
