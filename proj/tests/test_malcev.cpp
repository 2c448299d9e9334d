#include <gtest/gtest.h>

#include "oracles.hpp"
#include "scalarkit/malcev.hpp"

using namespace scalarkit;
using namespace scalarkit::malcev;
using modules::ModuleDesc;

namespace {

// Lie algebra from brackets (i, j) -> (k, c) meaning (b_i, b_j) = c b_k.
RingPresentation lie(std::size_t n, const std::vector<std::tuple<int, int, int, long>>& brackets) {
  Domain q = Domain::rationals();
  std::vector<std::vector<Vector>> t(n, std::vector<Vector>(n, zero_vector(q, n)));
  for (auto [i, j, k, c] : brackets) {
    t[i][j][k] = Scalar(q, c);
    t[j][i][k] = Scalar(q, -c);
  }
  return RingPresentation(ModuleDesc::vector_space(q, n), t);
}

RingPresentation h3() { return lie(3, {{0, 1, 2, 1}}); }
// x, y, (x,y), (x,(x,y)), (y,(x,y))
RingPresentation free3() { return lie(5, {{0, 1, 2, 1}, {0, 2, 3, 1}, {1, 2, 4, 1}}); }
// (e_0, e_i) = e_{i+1} for 1 <= i < n - 1: class n - 1
RingPresentation filiform(std::size_t n) {
  std::vector<std::tuple<int, int, int, long>> b;
  for (std::size_t i = 1; i + 1 < n; ++i) b.emplace_back(0, static_cast<int>(i), static_cast<int>(i + 1), 1);
  return lie(n, b);
}

std::shared_ptr<const NilpotentLieAlgebra> make(const RingPresentation& r) {
  return std::make_shared<const NilpotentLieAlgebra>(verify_nilpotent_lie(r));
}

Vector random_vec(Rng& rng, const NilpotentLieAlgebra& l) {
  Vector v;
  for (std::size_t i = 0; i < l.dim(); ++i) v.emplace_back(l.field(), rng.rational(5));
  return v;
}

Vector q(const NilpotentLieAlgebra& l, std::vector<Rational> c) { return l.element(c); }

oracle::QMatrix h3_matrix(const Vector& v) {
  oracle::QMatrix m(3, std::vector<oracle::Q>(3, 0));
  m[0][1] = v[0].value();
  m[1][2] = v[1].value();
  m[0][2] = v[2].value();
  return m;
}

oracle::FreeSeries free3_series(const Vector& v) {
  static const char* words[] = {"x", "y", "xy", "xxy", "yxy"};
  oracle::FreeSeries s;
  s.degree = 3;
  for (std::size_t i = 0; i < 5; ++i) s = s + oracle::nested_bracket(words[i], 3).scaled(v[i].value());
  return s;
}

}  // namespace

TEST(VerifyNilpotentLie, Examples) {
  auto h = verify_nilpotent_lie(h3());
  EXPECT_EQ(h.nilpotency_class(), 2u);
  ASSERT_EQ(h.series().size(), 3u);
  EXPECT_EQ(h.series()[0].size(), 3u);
  EXPECT_EQ(h.series()[1].size(), 1u);
  EXPECT_TRUE(h.series()[2].empty());
  EXPECT_EQ(verify_nilpotent_lie(lie(2, {})).nilpotency_class(), 1u);
  EXPECT_EQ(verify_nilpotent_lie(free3()).nilpotency_class(), 3u);
  EXPECT_EQ(verify_nilpotent_lie(filiform(6)).nilpotency_class(), 5u);
  try {
    verify_nilpotent_lie(lie(2, {{0, 1, 1, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotNilpotent);
  }
  Domain qd = Domain::rationals();
  std::vector<std::vector<Vector>> t(2, std::vector<Vector>(2, zero_vector(qd, 2)));
  t[0][1][0] = Scalar::one(qd);
  try {
    verify_nilpotent_lie(RingPresentation(ModuleDesc::vector_space(qd, 2), t));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotLie);
  }
}

TEST(BCHTable, Coefficients) {
  const auto& t = bch_table(3);
  EXPECT_EQ(t.coefficient("x"), 1);
  EXPECT_EQ(t.coefficient("y"), 1);
  EXPECT_EQ(t.coefficient("xy") - t.coefficient("yx"), Rational(1, 2));
  EXPECT_THROW(bch_table(kMaxClass + 1), Error);
  EXPECT_EQ(&bch_table(3), &bch_table(3));
}

TEST(BCH, Examples) {
  auto h = make(h3());
  EXPECT_EQ(bch(*h, q(*h, {1, 0, 0}), q(*h, {0, 1, 0})), q(*h, {1, 1, Rational(1, 2)}));
  Rng rng(1);
  Vector x = random_vec(rng, *h);
  EXPECT_EQ(bch(*h, x, h->zero()), x);
  auto f = make(free3());
  Vector v = bch(*f, q(*f, {1, 0, 0, 0, 0}), q(*f, {0, 1, 0, 0, 0}));
  EXPECT_EQ(v, q(*f, {1, 1, Rational(1, 2), Rational(1, 12), Rational(-1, 12)}));
}

TEST(BCH, MatrixOracleH3) {
  auto h = make(h3());
  Rng rng(200);
  for (int t = 0; t < 200; ++t) {
    Vector a = random_vec(rng, *h), b = random_vec(rng, *h);
    EXPECT_EQ(h3_matrix(bch(*h, a, b)), oracle::bch(h3_matrix(a), h3_matrix(b)));
  }
}

TEST(BCH, SeriesOracleFreeClassThree) {
  auto f = make(free3());
  EXPECT_EQ(free3_series(q(*f, {1, 0, 0, 0, 0})).terms, oracle::letter('x', 3).terms);
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    Vector a = random_vec(rng, *f), b = random_vec(rng, *f);
    EXPECT_EQ(free3_series(bch(*f, a, b)).terms, oracle::bch_series(free3_series(a), free3_series(b)).terms);
  }
}

TEST(BCH, ClassLimit) {
  auto big = make(filiform(8));
  EXPECT_EQ(big->nilpotency_class(), 7u);
  EXPECT_THROW(bch(*big, big->zero(), big->zero()), Error);
  auto six = make(filiform(7));
  Rng rng(6);
  Vector a = random_vec(rng, *six), b = random_vec(rng, *six), c = random_vec(rng, *six);
  EXPECT_EQ(bch(*six, bch(*six, a, b), c), bch(*six, a, bch(*six, b, c)));
}

TEST(BCH, Naturality) {
  // projection h3 -> h3 / <z>, which is abelian
  auto h = make(h3());
  Rng rng(12);
  for (int t = 0; t < 30; ++t) {
    Vector a = random_vec(rng, *h), b = random_vec(rng, *h);
    Vector p = bch(*h, a, b);
    EXPECT_EQ(p[0], a[0] + b[0]);
    EXPECT_EQ(p[1], a[1] + b[1]);
  }
}

TEST(Group, Examples) {
  auto h = make(h3());
  GroupElement g = group_element(h, q(*h, {1, 0, 0}));
  EXPECT_EQ(group_pow(g, Rational(1, 2)).log, q(*h, {Rational(1, 2), 0, 0}));
  EXPECT_TRUE(group_mul(g, group_inv(g)).is_identity());
  EXPECT_EQ(group_pow(g, 1), g);
  Rng rng(50);
  for (int t = 0; t < 50; ++t) {
    GroupElement x = group_element(h, random_vec(rng, *h));
    GroupElement r = group_pow(x, Rational(1, 2));
    EXPECT_EQ(group_mul(r, r), x);
  }
  auto other = make(h3());
  EXPECT_THROW(group_mul(g, group_identity(other)), Error);
}

TEST(Group, AxiomsAcrossClasses) {
  Rng rng(100);
  for (const auto& r : {h3(), free3(), filiform(5), filiform(6)}) {
    auto l = make(r);
    for (int t = 0; t < 100; ++t) {
      GroupElement a = group_element(l, random_vec(rng, *l)), b = group_element(l, random_vec(rng, *l)),
                   c = group_element(l, random_vec(rng, *l));
      EXPECT_EQ(group_mul(a, group_mul(b, c)), group_mul(group_mul(a, b), c));
      EXPECT_TRUE(group_mul(group_inv(a), a).is_identity());
      EXPECT_EQ(group_mul(a, group_identity(l)), a);
      Rational s = rng.rational(4), u = rng.rational(4);
      EXPECT_EQ(group_mul(group_pow(a, s), group_pow(a, u)), group_pow(a, s + u));
      EXPECT_EQ(group_pow(group_pow(a, s), u), group_pow(a, s * u));
    }
  }
}

TEST(Commutator, Examples) {
  auto h = make(h3());
  auto c = group_commutator(group_element(h, q(*h, {1, 0, 0})), group_element(h, q(*h, {0, 1, 0})));
  EXPECT_EQ(c.value.log, q(*h, {0, 0, 1}));
  EXPECT_TRUE(c.class_two_exact);
  auto z = group_commutator(group_element(h, q(*h, {1, 0, 0})), group_element(h, q(*h, {2, 0, 5})));
  EXPECT_TRUE(z.value.is_identity());
  EXPECT_TRUE(is_zero(z.bracket));
  EXPECT_TRUE(z.trivial_iff_bracket_zero);
  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    auto r = group_commutator(group_element(h, random_vec(rng, *h)), group_element(h, random_vec(rng, *h)));
    EXPECT_TRUE(r.class_two_exact);
  }
  auto f = make(free3());
  bool some_inexact = false;
  for (int t = 0; t < 30; ++t) {
    auto r = group_commutator(group_element(f, random_vec(rng, *f)), group_element(f, random_vec(rng, *f)));
    EXPECT_TRUE(r.leading_term_matches);
    EXPECT_TRUE(r.trivial_iff_bracket_zero);
    some_inexact = some_inexact || !r.class_two_exact;
  }
  EXPECT_TRUE(some_inexact);
}

TEST(Correspondence, CenterAndSeries) {
  auto h = make(h3());
  auto r = central_series_and_center(h);
  ASSERT_EQ(r.group_center.size(), 1u);
  EXPECT_TRUE(r.center_matches);
  EXPECT_TRUE(r.center_verified);
  for (const auto& lv : r.levels) {
    EXPECT_TRUE(lv.closed);
    EXPECT_TRUE(lv.lands);
    EXPECT_TRUE(lv.generates);
  }
  auto ab = central_series_and_center(make(lie(2, {})));
  EXPECT_EQ(ab.group_center.size(), 2u);
  EXPECT_TRUE(ab.center_matches);
  auto f = central_series_and_center(make(free3()));
  EXPECT_EQ(f.annihilator.size(), 2u);
  EXPECT_TRUE(f.center_matches);
  EXPECT_TRUE(f.center_verified);
  EXPECT_EQ(f.levels.size(), 3u);
  for (const auto& lv : f.levels) EXPECT_TRUE(lv.closed && lv.lands && lv.generates);
  auto fil = central_series_and_center(make(filiform(6)));
  EXPECT_TRUE(fil.center_matches);
  for (const auto& lv : fil.levels) EXPECT_TRUE(lv.closed && lv.lands && lv.generates);
}

TEST(GroupDecompose, Examples) {
  auto hq = make(rings::direct_product(h3(), lie(1, {})));
  auto d = group_decompose(hq);
  ASSERT_EQ(d.factors.size(), 1u);
  EXPECT_EQ(d.factors[0].nilpotency_class, 2u);
  EXPECT_EQ(d.factors[0].residue.degree, 1u);
  EXPECT_EQ(d.abelian.size(), 1u);
  EXPECT_TRUE(d.cross_commutators_trivial);
  auto hh = group_decompose(make(rings::direct_product(h3(), h3())));
  EXPECT_EQ(hh.factors.size(), 2u);
  EXPECT_TRUE(hh.abelian.empty());
  EXPECT_TRUE(hh.cross_commutators_trivial);
  auto ab = group_decompose(make(lie(2, {})));
  EXPECT_TRUE(ab.factors.empty());
  EXPECT_EQ(ab.abelian.size(), 2u);
}
