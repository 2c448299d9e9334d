// Acceptance run: one line per criterion, exit status 0 iff all pass.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "document.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "scalarkit/malcev.hpp"
#include "selftest.hpp"

using namespace scalarkit;
using bilinear::BilinearMap;
using cli::Json;
using malcev::GroupElement;
using malcev::NilpotentLieAlgebra;
using modules::ModuleDesc;
using rings::RingPresentation;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed checks; the first few are reported.
class Checker {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 3) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  Outcome outcome(const std::string& summary) const {
    Outcome o{failed_ == 0, summary + ", " + std::to_string(checks_ - failed_) + "/" + std::to_string(checks_) + " checks"};
    for (const auto& f : failures_) o.detail += "; failed: " + f;
    return o;
  }

 private:
  std::size_t checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

std::string fixture_path(const std::string& name) { return std::string(SCALARKIT_FIXTURE_DIR) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

cli::InputDocument document(const std::string& name) { return cli::parse_document(read_file(fixture_path(name))); }
cli::Structure fixture(const std::string& name) { return cli::load_structure(document(name)); }

BilinearMap bilinear_map(const cli::Structure& s) { return BilinearMap(s.carrier, s.codomain, s.table); }
RingPresentation ring(const cli::Structure& s) { return RingPresentation(s.carrier, s.table); }

std::shared_ptr<const NilpotentLieAlgebra> lie(const std::string& name) {
  return std::make_shared<const NilpotentLieAlgebra>(malcev::verify_nilpotent_lie(ring(fixture(name))));
}

Vector random_vec(Rng& rng, const NilpotentLieAlgebra& l) {
  Vector v;
  for (std::size_t i = 0; i < l.dim(); ++i) v.emplace_back(l.field(), rng.rational(5));
  return v;
}

Vector combo(const Domain& d, const std::vector<Vector>& basis, Rng& rng, std::size_t n) {
  Vector v = zero_vector(d, n);
  for (const auto& b : basis) v = add(v, scale(Scalar(d, rng.rational(4)), b));
  return v;
}

// ------------------------------------------------------------ matrix models

// Strictly upper triangular model of a nilpotent Lie algebra: log coordinates
// map to matrices through fixed generators. The model is checked against the
// structure constants before use.
struct MatrixModel {
  std::vector<oracle::QMatrix> generators;

  oracle::QMatrix operator()(const Vector& v) const {
    oracle::QMatrix out(generators[0].size(), std::vector<oracle::Q>(generators[0].size(), 0));
    for (std::size_t i = 0; i < v.size(); ++i) out = oracle::add(out, oracle::scale(v[i].value(), generators[i]));
    return out;
  }

  bool faithful_to(const NilpotentLieAlgebra& l) const {
    for (std::size_t i = 0; i < l.dim(); ++i)
      for (std::size_t j = 0; j < l.dim(); ++j) {
        auto a = generators[i], b = generators[j];
        auto br = oracle::add(oracle::mul(a, b), oracle::scale(-1, oracle::mul(b, a)));
        if (br != (*this)(l.ring().multiplication().at(i, j))) return false;
      }
    return true;
  }
};

oracle::QMatrix elementary(std::size_t n, std::size_t r, std::size_t c) {
  oracle::QMatrix m(n, std::vector<oracle::Q>(n, 0));
  m[r][c] = 1;
  return m;
}

// x = E01, y = E12, z = E02.
MatrixModel h3_model() { return {{elementary(3, 0, 1), elementary(3, 1, 2), elementary(3, 0, 2)}}; }

// h3 (+) Q w as 5 x 5 block matrices.
MatrixModel h3_plus_line_model() {
  return {{elementary(5, 0, 1), elementary(5, 1, 2), elementary(5, 0, 2), elementary(5, 3, 4)}};
}

oracle::QMatrix group_commutator_matrix(const oracle::QMatrix& a, const oracle::QMatrix& b) {
  auto ea = oracle::exp_nilpotent(a), eb = oracle::exp_nilpotent(b);
  auto ia = oracle::exp_nilpotent(oracle::scale(-1, a)), ib = oracle::exp_nilpotent(oracle::scale(-1, b));
  return oracle::log_unipotent(oracle::mul(oracle::mul(ia, ib), oracle::mul(ea, eb)));
}

// Free nilpotent class-3 algebra on x, y embedded in truncated free series.
oracle::FreeSeries free3_series(const Vector& v) {
  static const char* words[] = {"x", "y", "xy", "xxy", "yxy"};
  oracle::FreeSeries s;
  s.degree = 3;
  for (std::size_t i = 0; i < 5; ++i) s = s + oracle::nested_bracket(words[i], 3).scaled(v[i].value());
  s.prune();
  return s;
}

bool free3_model_faithful(const NilpotentLieAlgebra& l) {
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = 0; j < l.dim(); ++j) {
      auto a = free3_series(unit_vector(l.field(), l.dim(), i));
      auto b = free3_series(unit_vector(l.field(), l.dim(), j));
      auto br = a * b + (b * a).scaled(-1);
      br.prune();
      if (br.terms != free3_series(l.ring().multiplication().at(i, j)).terms) return false;
    }
  return true;
}

// ------------------------------------------------------------- criteria

// f(Ax, y) = f(x, Ay) = A.f(x, y) on basis pairs, with A.f(x, y) read from the
// recorded action on the image.
Outcome criterion_1() {
  Checker c;
  std::vector<std::string> names = {"alternating-q2.json", "alternating-q2-sum.json", "gf2-field4.json",
                                    "gf3-dual-numbers.json", "gf27.json"};
  std::string dims;
  for (const auto& name : names) {
    BilinearMap f = bilinear_map(fixture(name));
    auto rep = scalar_rings::p_of_f(f);
    dims += (dims.empty() ? "" : ",") + std::to_string(rep.algebra.dim());
    c.check(rep.algebra.dim() >= 1, name + ": P(f) nonzero");
    const Domain& d = *f.domain().field();
    const std::size_t n = f.dim();
    for (std::size_t t = 0; t < rep.algebra.dim(); ++t) {
      const Matrix& a = rep.algebra.basis[t];
      const Matrix& act = rep.action_on_image[t];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Vector bi = unit_vector(d, n, i), bj = unit_vector(d, n, j);
          Vector left = f.apply(a * bi, bj), right = f.apply(bi, a * bj);
          auto coords = coordinates_in(rep.image_basis, f.at(i, j));
          c.check(coords.has_value(), name + ": product in the image");
          if (!coords) continue;
          Vector acted = act * *coords;
          Vector scaled = zero_vector(d, f.codomain().size());
          for (std::size_t k = 0; k < acted.size(); ++k) scaled = add(scaled, scale(acted[k], rep.image_basis[k]));
          c.check(left == right, name + ": f(Ax,y) = f(x,Ay)");
          c.check(left == scaled, name + ": f(Ax,y) = A.f(x,y)");
        }
    }
    // Closure under composition, checked directly.
    for (const auto& a : rep.algebra.basis)
      for (const auto& b : rep.algebra.basis) c.check(rep.algebra.contains(a * b), name + ": closed");
  }
  return c.outcome(std::to_string(names.size()) + " maps, dim P(f) = " + dims);
}

oracle::GFTensor tensor_of(const BilinearMap& f, long p) {
  oracle::GFTensor g{p, f.dim(), f.codomain().size(), {}};
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j)
      for (std::size_t k = 0; k < g.m; ++k) {
        mpz_class v = f.at(i, j)[k].value().get_num() % p;
        if (v < 0) v += p;
        g.t.push_back(v.get_si());
      }
  return g;
}

// The Z_n chain stabilizes at P(f), and P(f) equals the enumerated scalar ring.
Outcome criterion_2() {
  Checker c;
  Rng rng(31337);
  int instances = 0, nontrivial = 0;
  for (long p : {2L, 3L}) {
    Domain d = Domain::prime_field(p);
    for (int t = 0; t < 12; ++t) {
      BilinearMap f = testgen::random_instance(rng, d);
      const std::string tag = "GF(" + std::to_string(p) + ") #" + std::to_string(t + 1);
      auto report = scalar_rings::p_of_f(f);
      auto prev = scalar_rings::z_n_diagnostic(f, 1).zn;
      unsigned n = 1;
      bool stable = false;
      for (; n < 12; ++n) {
        auto next = scalar_rings::z_n_diagnostic(f, n + 1).zn;
        if (testgen::same_space(prev, next)) {
          stable = true;
          break;
        }
        prev = next;
      }
      c.check(stable, tag + ": Z_n chain stabilizes");
      c.check(testgen::same_space(prev, report.algebra), tag + ": stable Z_n = P(f)");
      auto brute = oracle::brute_scalar_ring(tensor_of(f, p));
      std::size_t expected = 1;
      for (std::size_t k = 0; k < report.algebra.dim(); ++k) expected *= static_cast<std::size_t>(p);
      c.check(brute.size() == expected, tag + ": |P(f)| matches enumeration");
      bool all = true;
      const std::size_t dim = f.dim();
      for (const auto& a : brute) {
        Matrix m(d, dim, dim);
        for (std::size_t i = 0; i < dim * dim; ++i) m(i / dim, i % dim) = Scalar(d, Rational(a[i]));
        all = all && report.algebra.contains(m);
      }
      c.check(all, tag + ": enumerated elements lie in P(f)");
      ++instances;
      if (report.algebra.dim() > 1) ++nontrivial;
    }
  }
  c.check(instances >= 20, "at least 20 instances");
  return c.outcome(std::to_string(instances) + " instances, " + std::to_string(nontrivial) + " with dim P(f) > 1");
}

std::vector<Vector> power_of_ideal(const artinian::CommutativeAlgebra& a, const std::vector<Vector>& j, unsigned k) {
  std::vector<Vector> out = j;
  for (unsigned i = 1; i < k && !out.empty(); ++i) out = a.product(out, j);
  return out;
}

// Orthogonal idempotents summing to 1, nilpotent maximal ideals, J-series.
Outcome criterion_3() {
  Checker c;
  struct Case {
    std::string file;
    std::vector<unsigned> indices;
    std::vector<std::size_t> r_k;
  };
  std::vector<Case> cases = {{"q-x2-x.json", {1, 1}, {1, 1}},
                             {"q-x2-1.json", {1, 1}, {1, 1}},
                             {"q-x3.json", {3}, {3}},
                             {"gf2-x2-1.json", {2}, {2}}};
  for (const auto& cs : cases) {
    auto a = cli::commutative_algebra(fixture(cs.file));
    auto factors = artinian::local_decomposition(a);
    c.check(factors.size() == cs.indices.size(), cs.file + ": factor count");
    if (factors.size() != cs.indices.size()) continue;
    Vector sum = a.zero();
    std::vector<unsigned> indices;
    std::vector<std::size_t> rks;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& lf = factors[i];
      sum = add(sum, lf.idempotent);
      c.check(a.mul(lf.idempotent, lf.idempotent) == lf.idempotent, cs.file + ": idempotent");
      for (std::size_t j = 0; j < factors.size(); ++j)
        if (j != i) c.check(is_zero(a.mul(lf.idempotent, factors[j].idempotent)), cs.file + ": orthogonal");
      unsigned index = 1;
      while (!power_of_ideal(a, lf.maximal_ideal, index).empty() && index < 16) ++index;
      c.check(index == lf.nilpotency_index, cs.file + ": J^index = 0 exactly at the reported index");
      if (index > 1)
        c.check(!power_of_ideal(a, lf.maximal_ideal, index - 1).empty(), cs.file + ": J^(index-1) != 0");
      for (const auto& x : lf.maximal_ideal) c.check(a.is_nilpotent(x), cs.file + ": ideal element nilpotent");
      indices.push_back(index);
      rks.push_back(artinian::j_series(a, lf).r_k);
    }
    std::sort(indices.begin(), indices.end());
    std::sort(rks.begin(), rks.end());
    c.check(sum == a.one(), cs.file + ": idempotents sum to 1");
    c.check(indices == cs.indices, cs.file + ": nilpotency indices");
    c.check(rks == cs.r_k, cs.file + ": r_k");
  }
  return c.outcome("indices [1,1] [1,1] [3] [2], r_k [1,1] [1,1] [3] [2]");
}

// Multiplication in base[t]/(m) on coefficient vectors, m monic.
std::vector<oracle::Q> residue_mul(const std::vector<oracle::Q>& a, const std::vector<oracle::Q>& b,
                                   const std::vector<oracle::Q>& m) {
  const std::size_t d = m.size() - 1;
  std::vector<oracle::Q> prod(2 * d, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  for (std::size_t k = prod.size(); k-- > d;) {
    oracle::Q lead = prod[k];
    if (lead == 0) continue;
    for (std::size_t i = 0; i <= d; ++i) prod[k - d + i] -= lead * m[i];
  }
  prod.resize(d);
  return prod;
}

// Lifted representatives: s^2 = 2 exactly, and L maps isomorphically onto the residue field.
Outcome criterion_4() {
  Checker c;
  auto a = cli::commutative_algebra(fixture("q-x2-2-squared.json"));
  auto factors = artinian::local_decomposition(a);
  c.check(factors.size() == 1, "one local factor");
  if (factors.size() != 1) return c.outcome("q-x2-2-squared");
  const auto& lf = factors[0];
  auto reps = artinian::field_of_representatives(a, lf);
  const Domain& q = a.base();
  const Vector& s = reps.lifted_generator;
  c.check(a.mul(s, s) == scale(Scalar(q, 2L), lf.idempotent), "s^2 = 2 exactly");
  c.check(lf.idempotent == a.one(), "the factor is the whole algebra");
  c.check(reps.basis.size() == 2, "L = span{1, s}");
  std::vector<oracle::Q> m;
  for (const auto& co : reps.minpoly.coefficients()) m.push_back(co.value());
  c.check(m == std::vector<oracle::Q>{-2, 0, 1}, "residue minpoly t^2 - 2");
  c.check(lf.residue.degree == 2, "residue degree 2");
  if (reps.basis.size() != 2 || m.size() != 3) return c.outcome("q-x2-2-squared");
  // Bijective: the images of the basis of L are independent.
  auto p0 = reps.residue_coordinates(a, lf, reps.basis[0]);
  auto p1 = reps.residue_coordinates(a, lf, reps.basis[1]);
  c.check(p0.size() == 2 && p1.size() == 2 && p0[0] * p1[1] - p0[1] * p1[0] != 0, "L -> residue field bijective");
  // Closed under multiplication and multiplicative on the basis.
  std::vector<Vector> span_l = reps.basis;
  for (const auto& u : reps.basis)
    for (const auto& v : reps.basis) {
      Vector uv = a.mul(u, v);
      c.check(coordinates_in(span_l, uv).has_value(), "L closed under multiplication");
      auto lhs = reps.residue_coordinates(a, lf, uv);
      auto rhs = residue_mul(reps.residue_coordinates(a, lf, u), reps.residue_coordinates(a, lf, v), m);
      c.check(lhs == rhs, "residue map multiplicative");
    }
  // Additivity is linear algebra; the unit goes to 1.
  auto one = reps.residue_coordinates(a, lf, lf.idempotent);
  c.check(one == std::vector<oracle::Q>{1, 0}, "1 maps to 1");
  return c.outcome("s = " + to_string(s) + ", " + std::to_string(reps.newton_steps) + " Newton steps");
}

Json table_json(const std::vector<std::vector<Vector>>& t) {
  Json out = Json::array();
  for (const auto& row : t) {
    Json r = Json::array();
    for (const auto& v : row) {
      Json e = Json::array();
      for (const auto& x : v) e.push_back(x.to_string());
      r.push_back(e);
    }
    out.push_back(r);
  }
  return out;
}

// Two local components, a one-dimensional addition, exact reassembly.
Outcome criterion_5() {
  Checker c;
  auto doc = document("h3-h3-q.json");
  auto r = ring(cli::load_structure(doc));
  auto d = rings::decompose_char0(r);
  c.check(d.components.size() == 2, "two components");
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    const auto& comp = d.components[i];
    const std::string tag = "component " + std::to_string(i + 1);
    c.check(comp.scalar_dim == 1, tag + ": scalar dim 1");
    c.check(comp.scalars_local, tag + ": local scalars");
    auto again = rings::decompose_char0(comp.ring);
    c.check(again.components.size() == 1 && again.addition_basis.empty(), tag + ": indecomposable");
    c.check(comp.basis.size() == 3, tag + ": dim 3");
  }
  c.check(d.addition_basis.size() == 1, "addition of dim 1");
  c.check(d.addition.multiplication().is_zero(), "addition has zero multiplication");
  const std::string original = doc.table->dump();
  const std::string reassembled = table_json(d.reassembled_table()).dump();
  c.check(original == reassembled, "reassembled table byte-identical");
  return c.outcome(std::to_string(d.components.size()) + " components, addition dim " +
                   std::to_string(d.addition_basis.size()) + ", " + std::to_string(reassembled.size()) +
                   " table bytes compared");
}

// Integer ring with Ann = <u>, R^2 meet Ann = <2u>: no foundation-addition split.
Outcome criterion_6() {
  Checker c;
  auto s = fixture("z-nosplit.json");
  auto r = ring(s);
  Domain z = Domain::integers();
  Vector u = unit_vector(z, 3, 2);
  auto ann = rings::annihilator(r);
  auto square = rings::square_ideal(r);
  auto delta = modules::intersection(r.carrier(), ann, square);
  c.check(modules::same_submodule(r.carrier(), ann, modules::span(r.carrier(), {u})), "Ann(R) = <u>");
  c.check(modules::same_submodule(r.carrier(), delta, modules::span(r.carrier(), {scale(Scalar(z, 2L), u)})),
          "R^2 meet Ann(R) = <2u>");
  bool nosplit = false;
  try {
    rings::foundation_addition(r);
  } catch (const Error& e) {
    nosplit = e.code() == ErrorCode::NoSplit;
  }
  c.check(nosplit, "NoSplit raised");
  c.check(!modules::same_submodule(r.carrier(), delta, ann), "delta is a proper subgroup of Ann(R)");
  return c.outcome("Ann = <u>, delta = <2u>, NoSplit");
}

// BCH against matrices, group laws, class-two commutators.
Outcome criterion_7() {
  Checker c;
  Rng rng(4242);
  auto h = lie("h3.json");
  auto f = lie("free-class3.json");
  MatrixModel model = h3_model();
  c.check(model.faithful_to(*h), "h3 matrix model faithful");
  c.check(free3_model_faithful(*f), "free3 series model faithful");
  for (int t = 0; t < 200; ++t) {
    Vector a = random_vec(rng, *h), b = random_vec(rng, *h);
    c.check(model(malcev::bch(*h, a, b)) == oracle::bch(model(a), model(b)), "h3 pair " + std::to_string(t + 1));
  }
  for (int t = 0; t < 50; ++t) {
    Vector a = random_vec(rng, *f), b = random_vec(rng, *f);
    c.check(free3_series(malcev::bch(*f, a, b)).terms == oracle::bch_series(free3_series(a), free3_series(b)).terms,
            "free3 pair " + std::to_string(t + 1));
  }
  for (const auto& l : {h, f}) {
    const std::string tag = l == h ? "h3" : "free3";
    auto e = malcev::group_identity(l);
    for (int t = 0; t < 100; ++t) {
      auto g = malcev::group_element(l, random_vec(rng, *l));
      auto k = malcev::group_element(l, random_vec(rng, *l));
      auto m = malcev::group_element(l, random_vec(rng, *l));
      c.check(malcev::group_mul(malcev::group_mul(g, k), m) == malcev::group_mul(g, malcev::group_mul(k, m)),
              tag + ": associativity");
      c.check(malcev::group_mul(g, e) == g && malcev::group_mul(e, g) == g, tag + ": identity");
      c.check(malcev::group_mul(g, malcev::group_inv(g)).is_identity(), tag + ": inverse");
      Rational x = rng.rational(4), y = rng.rational(4);
      c.check(malcev::group_mul(malcev::group_pow(g, x), malcev::group_pow(g, y)) == malcev::group_pow(g, x + y),
              tag + ": g^a g^b = g^(a+b)");
      c.check(malcev::group_pow(malcev::group_pow(g, x), y) == malcev::group_pow(g, x * y),
              tag + ": (g^a)^b = g^(ab)");
      auto comm = malcev::group_commutator(g, k);
      c.check(comm.leading_term_matches, tag + ": commutator leading term");
      if (l == h) {
        c.check(comm.value.log == l->bracket(g.log, k.log), "h3: [g,h] = exp((log g, log h))");
        c.check(model(comm.value.log) == group_commutator_matrix(model(g.log), model(k.log)),
                "h3: commutator against matrices");
      }
    }
  }
  return c.outcome("200 h3 pairs, 50 free3 pairs, 100 triples per group");
}

// Central series levels and the center, with an independent centrality check.
Outcome criterion_8() {
  Checker c;
  Rng rng(808);
  auto h = lie("h3.json");
  auto f = lie("free-class3.json");
  std::string dims;
  for (const auto& l : {h, f}) {
    const std::string tag = l == h ? "h3" : "free3";
    auto rep = malcev::central_series_and_center(l);
    c.check(rep.levels.size() == l->nilpotency_class(), tag + ": one level per class");
    for (std::size_t i = 0; i < rep.levels.size(); ++i) {
      const auto& lv = rep.levels[i];
      c.check(lv.closed && lv.lands && lv.generates, tag + ": level " + std::to_string(i + 1));
    }
    c.check(rep.center_matches, tag + ": Z(G) = exp(Ann L)");
    c.check(rep.center_verified, tag + ": center verified");
    dims += (dims.empty() ? "" : ", ") + tag + " center dim " + std::to_string(rep.group_center.size());
    for (int t = 0; t < 30; ++t) {
      Vector z = combo(l->field(), rep.group_center, rng, l->dim());
      Vector g = random_vec(rng, *l);
      if (l == h) {
        auto m = h3_model();
        auto lhs = oracle::mul(oracle::exp_nilpotent(m(z)), oracle::exp_nilpotent(m(g)));
        auto rhs = oracle::mul(oracle::exp_nilpotent(m(g)), oracle::exp_nilpotent(m(z)));
        c.check(lhs == rhs, "h3: center element commutes (matrices)");
      } else {
        c.check(oracle::bch_series(free3_series(z), free3_series(g)).terms ==
                    oracle::bch_series(free3_series(g), free3_series(z)).terms,
                "free3: center element commutes (series)");
      }
    }
    // A basis element is central in L exactly when it lies in the group center.
    for (std::size_t i = 0; i < l->dim(); ++i) {
      Vector b = unit_vector(l->field(), l->dim(), i);
      bool central = true;
      for (std::size_t j = 0; j < l->dim(); ++j)
        central = central && is_zero(l->ring().multiplication().at(i, j));
      c.check(central == coordinates_in(rep.group_center, b).has_value(),
              tag + ": basis centrality consistent");
    }
  }
  c.check(dims == "h3 center dim 1, free3 center dim 2", "center dimensions 1 and 2");
  return c.outcome(dims);
}

// h3 (+) Q: one class-two factor, a one-dimensional abelian part, trivial cross commutators.
Outcome criterion_9() {
  Checker c;
  Rng rng(909);
  auto l = lie("h3-plus-abelian.json");
  auto model = h3_plus_line_model();
  c.check(model.faithful_to(*l), "matrix model faithful");
  auto d = malcev::group_decompose(l);
  c.check(d.factors.size() == 1, "one factor");
  if (!d.factors.empty()) {
    c.check(d.factors[0].nilpotency_class == 2, "factor of class 2");
    c.check(d.factors[0].basis.size() == 3, "factor of dim 3");
    c.check(d.factors[0].residue.degree == 1, "factor scalars Q");
  }
  c.check(d.abelian.size() == 1, "abelian part of dim 1");
  c.check(d.cross_commutators_trivial, "reported cross commutators trivial");
  for (const auto& fac : d.factors)
    for (int t = 0; t < 50; ++t) {
      Vector g = combo(l->field(), fac.basis, rng, l->dim());
      Vector a = combo(l->field(), d.abelian, rng, l->dim());
      auto lhs = oracle::mul(oracle::exp_nilpotent(model(g)), oracle::exp_nilpotent(model(a)));
      auto rhs = oracle::mul(oracle::exp_nilpotent(model(a)), oracle::exp_nilpotent(model(g)));
      c.check(lhs == rhs, "cross commutator trivial (matrices)");
    }
  // The factor and the abelian part together span L.
  std::vector<Vector> all = d.abelian;
  for (const auto& fac : d.factors) all.insert(all.end(), fac.basis.begin(), fac.basis.end());
  c.check(span_basis(l->field(), l->dim(), all).size() == l->dim(), "factors span L");
  return c.outcome(std::to_string(d.factors.size()) + " factor, abelian dim " + std::to_string(d.abelian.size()));
}

struct Run {
  std::string output;
  int status = -1;
};

Run run_command(const std::string& cmd) {
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

// Selftest quick twice through the installed command line: passing and byte-identical.
Outcome criterion_10() {
  Checker c;
  const std::string cmd = std::string("'") + SCALARKIT_CLI + "' selftest quick --format json --fixtures '" +
                          SCALARKIT_FIXTURE_DIR + "' 2>&1";
  Run first = run_command(cmd), second = run_command(cmd);
  c.check(first.status == 0, "first run exits 0");
  c.check(second.status == 0, "second run exits 0");
  c.check(!first.output.empty() && first.output == second.output, "outputs byte-identical");
  std::size_t checks = 0;
  try {
    Json rep = Json::parse(first.output);
    c.check(rep.value("result", "") == "pass", "result pass");
    checks = rep.value("checks", std::size_t{0});
    c.check(checks > 0 && rep.value("passed", std::size_t{0}) == checks, "every check passed");
  } catch (const std::exception&) {
    c.check(false, "report is JSON");
  }
  return c.outcome(std::to_string(checks) + " selftest checks, " + std::to_string(first.output.size()) + " bytes");
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "bilinear scalar certificate", 5, criterion_1},
      {2, "Z_n chain and enumeration agree with P(f)", 60, criterion_2},
      {3, "local decomposition and J-series", 0, criterion_3},
      {4, "field of representatives", 0, criterion_4},
      {5, "characteristic-zero ring decomposition", 0, criterion_5},
      {6, "integer ring without a split", 1, criterion_6},
      {7, "product formula and group laws", 0, criterion_7},
      {8, "central series and center", 0, criterion_8},
      {9, "group decomposition", 0, criterion_9},
      {10, "deterministic selftest", 120, criterion_10},
  };
  bool all = true;
  for (const auto& cr : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool timely = cr.limit_seconds == 0 || secs < cr.limit_seconds;
    bool pass = o.pass && timely;
    all = all && pass;
    char timing[96];
    if (cr.limit_seconds > 0)
      std::snprintf(timing, sizeof timing, "%.3f s, limit %.0f s", secs, cr.limit_seconds);
    else
      std::snprintf(timing, sizeof timing, "%.3f s, no time limit", secs);
    std::cout << "criterion " << cr.id << " [" << cr.name << "]: " << (pass ? "PASS" : "FAIL") << " (" << o.detail
              << "; tolerance exact; " << timing << (timely ? "" : ", over limit") << ")\n";
  }
  std::cout << (all ? "acceptance: PASS" : "acceptance: FAIL") << "\n";
  return all ? 0 : 1;
}
