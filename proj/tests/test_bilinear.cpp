#include <gtest/gtest.h>

#include <set>

#include "scalarkit/bilinear.hpp"

using namespace scalarkit;
using namespace scalarkit::bilinear;
using modules::ModuleDesc;
using modules::Summand;

namespace {

using Table = std::vector<std::vector<std::vector<Rational>>>;

BilinearMap make_map(const ModuleDesc& m, const ModuleDesc& n, const Table& t) {
  std::vector<std::vector<Vector>> table(m.size(), std::vector<Vector>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) table[i][j] = n.element(t[i][j]);
  return BilinearMap(m, n, table);
}

BilinearMap over(const Domain& d, std::size_t n, std::size_t m, const Table& t) {
  return make_map(ModuleDesc::vector_space(d, n), ModuleDesc::vector_space(d, m), t);
}

BilinearMap heisenberg(const Domain& d) {
  return over(d, 3, 3,
              {{{0, 0, 0}, {0, 0, 1}, {0, 0, 0}}, {{0, 0, -1}, {0, 0, 0}, {0, 0, 0}}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}});
}

// R = Z s + Z t + Z u with st = 2u, ts = -2u.
BilinearMap doubled_ring() {
  auto z = ModuleDesc::free_integer(3);
  return make_map(z, z,
                  {{{0, 0, 0}, {0, 0, 2}, {0, 0, 0}}, {{0, 0, -2}, {0, 0, 0}, {0, 0, 0}}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}});
}

BilinearMap random_map(Rng& rng, const Domain& d, std::size_t n, std::size_t m, unsigned sparsity) {
  std::vector<std::vector<Vector>> t(n, std::vector<Vector>(n));
  for (auto& row : t)
    for (auto& v : row)
      for (std::size_t k = 0; k < m; ++k) v.push_back(rng.below(sparsity) == 0 ? rng.scalar(d) : Scalar::zero(d));
  return BilinearMap(ModuleDesc::vector_space(d, n), ModuleDesc::vector_space(d, m), t);
}

Vector random_vec(Rng& rng, const Domain& d, std::size_t n) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rng.scalar(d));
  return v;
}

std::vector<Vector> all_vectors(const Domain& d, long p, std::size_t n) {
  std::vector<Vector> out{Vector{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vector> next;
    for (const auto& v : out)
      for (long a = 0; a < p; ++a) {
        Vector w = v;
        w.emplace_back(d, Rational(a));
        next.push_back(w);
      }
    out = next;
  }
  return out;
}

std::size_t power(std::size_t p, std::size_t k) {
  std::size_t r = 1;
  while (k--) r *= p;
  return r;
}

}  // namespace

TEST(BilinearMap, RejectsDivisibleTimesBounded) {
  ModuleDesc m({Summand::rational_line(), Summand::cyclic(4)});
  EXPECT_THROW(make_map(m, m, {{{0, 0}, {1, 0}}, {{0, 0}, {0, 0}}}), Error);
  EXPECT_NO_THROW(make_map(m, m, {{{1, 0}, {0, 0}}, {{0, 0}, {0, 1}}}));
}

TEST(BilinearMap, Bilinearity) {
  Rng rng(17);
  for (const Domain& d : {Domain::rationals(), Domain::prime_field(3)}) {
    for (int t = 0; t < 40; ++t) {
      auto f = random_map(rng, d, 1 + rng.below(4), 1 + rng.below(3), 2);
      std::size_t n = f.dim();
      Vector x = random_vec(rng, d, n), x2 = random_vec(rng, d, n), y = random_vec(rng, d, n);
      Scalar a = rng.scalar(d);
      EXPECT_EQ(f.apply(add(x, scale(a, x2)), y), add(f.apply(x, y), scale(a, f.apply(x2, y))));
      EXPECT_EQ(f.apply(y, add(x, scale(a, x2))), add(f.apply(y, x), scale(a, f.apply(y, x2))));
    }
  }
}

TEST(TwoSidedKernel, Examples) {
  Domain q = Domain::rationals();
  auto c = two_sided_kernel(heisenberg(q));
  ASSERT_EQ(c.basis.size(), 1u);
  EXPECT_TRUE(modules::contains(ModuleDesc::vector_space(q, 3), c, Vector{Scalar::zero(q), Scalar::zero(q), Scalar::one(q)}));
  auto r = two_sided_kernel(doubled_ring());
  ASSERT_EQ(r.basis.size(), 1u);
  EXPECT_EQ(r.basis[0][2].value(), 1);
  // one-sided kernels differ from the two-sided one
  auto f = over(q, 2, 1, {{{1}, {0}}, {{0}, {0}}});
  EXPECT_EQ(two_sided_kernel(f).basis.size(), 1u);
}

TEST(TwoSidedKernel, BruteForce) {
  Rng rng(3);
  for (long p : {2L, 3L}) {
    Domain d = Domain::prime_field(p);
    for (int t = 0; t < 25; ++t) {
      auto f = random_map(rng, d, 1 + rng.below(3), 1 + rng.below(2), 3);
      std::size_t n = f.dim(), count = 0;
      for (const auto& x : all_vectors(d, p, n)) {
        bool in = true;
        for (std::size_t j = 0; j < n && in; ++j) {
          Vector b = f.domain().basis_element(j);
          in = scalarkit::is_zero(f.apply(x, b)) && scalarkit::is_zero(f.apply(b, x));
        }
        if (in) ++count;
      }
      EXPECT_EQ(count, power(p, two_sided_kernel(f).basis.size()));
    }
  }
}

TEST(Image, Examples) {
  auto im = image_submodule(doubled_ring());
  ASSERT_EQ(im.basis.size(), 1u);
  EXPECT_EQ(abs(im.basis[0][2].value()), 2);
  Domain q = Domain::rationals();
  EXPECT_EQ(image_submodule(heisenberg(q)).basis.size(), 1u);
}

TEST(Image, Predicates) {
  Domain q = Domain::rationals();
  auto alt = over(q, 2, 1, {{{0}, {1}}, {{-1}, {0}}});
  EXPECT_TRUE(is_full(alt));
  EXPECT_TRUE(is_nondegenerate(alt));
  EXPECT_FALSE(is_full(heisenberg(q)));
  EXPECT_FALSE(is_nondegenerate(heisenberg(q)));
  EXPECT_FALSE(is_full(doubled_ring()));
}

TEST(FoundationSplit, Heisenberg) {
  Domain q = Domain::rationals();
  auto s = foundation_addition_split(heisenberg(q));
  EXPECT_EQ(s.foundation.dim(), 2u);
  EXPECT_EQ(s.foundation.codomain().size(), 1u);
  EXPECT_TRUE(is_nondegenerate(s.foundation));
  EXPECT_TRUE(is_full(s.foundation));
  EXPECT_EQ(s.addition.dim(), 1u);
  EXPECT_TRUE(s.addition.is_zero());
  EXPECT_EQ(s.codomain_addition.basis.size(), 2u);
}

TEST(FoundationSplit, NoComplementOverIntegers) {
  try {
    foundation_addition_split(doubled_ring());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSplit);
  }
}

TEST(FoundationSplit, Reassembly) {
  Rng rng(44);
  for (const Domain& d : {Domain::rationals(), Domain::prime_field(2), Domain::prime_field(5)}) {
    for (int t = 0; t < 20; ++t) {
      auto f = random_map(rng, d, 1 + rng.below(4), 1 + rng.below(4), 3);
      auto s = foundation_addition_split(f);
      EXPECT_TRUE(is_nondegenerate(s.foundation) || s.foundation.dim() == 0);
      EXPECT_TRUE(s.addition.is_zero());
      EXPECT_EQ(s.foundation.dim() + s.addition.dim(), f.dim());
      for (int k = 0; k < 5; ++k) {
        Vector x = random_vec(rng, d, f.dim()), y = random_vec(rng, d, f.dim());
        EXPECT_EQ(s.reassemble(f.domain(), f.codomain(), x, y), f.apply(x, y));
      }
    }
  }
}

TEST(TorsionSplit, MixedCarrier) {
  ModuleDesc m({Summand::rational_line(), Summand::cyclic(4)});
  auto f = make_map(m, m, {{{1, 0}, {0, 0}}, {{0, 0}, {0, 2}}});
  auto s = torsion_split(f);
  EXPECT_EQ(s.divisible.dim(), 1u);
  EXPECT_EQ(s.bounded.dim(), 1u);
  EXPECT_EQ(s.bounded.at(0, 0)[0].value(), 2);
  EXPECT_EQ(s.divisible.at(0, 0)[0].value(), 1);
  ModuleDesc free({Summand::free_int_line()});
  EXPECT_THROW(torsion_split(make_map(free, free, {{{1}}})), Error);
}

TEST(Width, Examples) {
  Domain f2 = Domain::prime_field(2);
  auto zero = over(f2, 2, 1, {{{0}, {0}}, {{0}, {0}}});
  EXPECT_EQ(width(zero, 8).value, 0u);
  auto alt = over(f2, 2, 1, {{{0}, {1}}, {{1}, {0}}});
  EXPECT_EQ(width(alt, 8).value, 1u);
  auto mult = over(f2, 1, 1, {{{1}}});
  auto w = width(mult, 8);
  EXPECT_EQ(w.value, 1u);
  EXPECT_TRUE(w.exact);
  // tensor map x (x) y into GF(2)^4: the identity matrix needs two rank-one terms
  auto tensor = over(f2, 2, 4, {{{1, 0, 0, 0}, {0, 1, 0, 0}}, {{0, 0, 1, 0}, {0, 0, 0, 1}}});
  auto tw = width(tensor, 8);
  EXPECT_EQ(tw.value, 2u);
  EXPECT_TRUE(tw.exact);
  // rational case falls back to the certified bound
  auto qt = over(Domain::rationals(), 2, 4, {{{1, 0, 0, 0}, {0, 1, 0, 0}}, {{0, 0, 1, 0}, {0, 0, 0, 1}}});
  auto qw = width(qt, 8);
  EXPECT_FALSE(qw.exact);
  EXPECT_EQ(qw.value, 2u);
}

TEST(Width, BruteForceSumsets) {
  Rng rng(808);
  for (int t = 0; t < 20; ++t) {
    Domain d = Domain::prime_field(2);
    auto f = random_map(rng, d, 1 + rng.below(3), 1 + rng.below(3), 2);
    auto w = width(f, 10);
    ASSERT_TRUE(w.exact);
    // oracle: grow the set of s-fold sums of products directly
    std::set<Vector> products, sums{zero_vector(d, f.codomain().size())};
    auto all = all_vectors(d, 2, f.dim());
    for (const auto& x : all)
      for (const auto& y : all) products.insert(f.apply(x, y));
    std::size_t target = power(2, image_submodule(f).basis.size());
    unsigned s = 0;
    while (sums.size() < target) {
      std::set<Vector> next = sums;
      for (const auto& a : sums)
        for (const auto& b : products) next.insert(add(a, b));
      sums = next;
      ++s;
    }
    EXPECT_EQ(w.value, s);
  }
}

TEST(Width, DirectSumIsMax) {
  Domain f2 = Domain::prime_field(2);
  auto tensor = over(f2, 2, 4, {{{1, 0, 0, 0}, {0, 1, 0, 0}}, {{0, 0, 1, 0}, {0, 0, 0, 1}}});
  // tensor (+) multiplication on GF(2), separate codomains
  auto sum = over(f2, 3, 5,
                  {{{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 0, 0, 0}},
                   {{0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 0}},
                   {{0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 1}}});
  EXPECT_EQ(width(sum, 8).value, std::max(width(tensor, 8).value, 1u));
}
