#include "scalarkit/malcev.hpp"

#include <map>
#include <mutex>

namespace scalarkit::malcev {

namespace {

bool in_span(const std::vector<Vector>& basis, const Vector& v) {
  return is_zero(v) || coordinates_in(basis, v).has_value();
}

bool same_span(const Domain& d, std::size_t n, const std::vector<Vector>& a, const std::vector<Vector>& b) {
  if (span_basis(d, n, a).size() != span_basis(d, n, b).size()) return false;
  for (const auto& v : a)
    if (!in_span(b, v)) return false;
  return true;
}

Vector random_element(Rng& rng, const Domain& d, const std::vector<Vector>& basis, std::size_t n) {
  Vector out = zero_vector(d, n);
  for (const auto& b : basis) out = add(out, scale(Scalar(d, rng.rational(4)), b));
  return out;
}

Rational factorial(unsigned k) {
  Rational r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

// Dynkin: sum over n and blocks (r_i, s_i) != (0, 0) of
// (-1)^{n-1} / n * [x^{r_1} y^{s_1} ... x^{r_n} y^{s_n}] / (m * prod r_i! s_i!)
// with m the total length and [..] the right-nested bracket.
void dynkin_blocks(unsigned cls, unsigned n, unsigned used, std::string& word, Rational& weight, unsigned blocks,
                   std::map<std::string, Rational>& acc) {
  if (blocks == n) {
    const std::size_t m = word.size();
    if (m >= 2 && word[m - 1] == word[m - 2]) return;  // (z, z) = 0 at the core
    Rational c = weight / Rational(static_cast<long>(n) * static_cast<long>(m));
    if (n % 2 == 0) c = -c;
    acc[word] += c;
    return;
  }
  for (unsigned r = 0; used + r <= cls; ++r)
    for (unsigned s = 0; used + r + s <= cls; ++s) {
      if (r + s == 0) continue;
      const std::size_t keep = word.size();
      word.append(r, 'x');
      word.append(s, 'y');
      Rational w = weight / (factorial(r) * factorial(s));
      dynkin_blocks(cls, n, used + r + s, word, w, blocks + 1, acc);
      word.resize(keep);
    }
}

BCHTable build_table(unsigned cls) {
  std::map<std::string, Rational> acc;
  for (unsigned n = 1; n <= cls; ++n) {
    std::string word;
    Rational weight = 1;
    dynkin_blocks(cls, n, 0, word, weight, 0, acc);
  }
  BCHTable t;
  t.cls = cls;
  for (auto& [w, c] : acc) {
    c.canonicalize();
    if (c != 0) t.terms.push_back({w, c});
  }
  std::stable_sort(t.terms.begin(), t.terms.end(), [](const auto& a, const auto& b) {
    return a.word.size() != b.word.size() ? a.word.size() < b.word.size() : a.word < b.word;
  });
  return t;
}

void check_same(const GroupElement& g, const GroupElement& h) {
  if (g.algebra != h.algebra) fail(ErrorCode::AlgebraMismatch, "group elements come from different algebras");
}

}  // namespace

Vector NilpotentLieAlgebra::element(const std::vector<Rational>& coords) const {
  if (coords.size() != dim()) fail(ErrorCode::DimensionMismatch, "element has the wrong number of coordinates");
  Vector v;
  for (const auto& c : coords) v.emplace_back(field_, c);
  return v;
}

NilpotentLieAlgebra verify_nilpotent_lie(const RingPresentation& r) {
  const auto& f = r.carrier().field();
  if (!f) fail(ErrorCode::NonFieldDomain, "nilpotent Lie algebras need a field carrier");
  if (f->characteristic() != 0) fail(ErrorCode::UnsupportedDomain, "nilpotent Lie algebras need characteristic 0");
  if (auto w = r.lie_witness()) {
    const auto& [i, j, k] = *w;
    std::string what = i == j ? "(b_" + std::to_string(i) + ", b_" + std::to_string(i) + ") != 0"
                       : j == k ? "(b_" + std::to_string(i) + ", b_" + std::to_string(j) + ") is not antisymmetric"
                                : "Jacobi fails on (b_" + std::to_string(i) + ", b_" + std::to_string(j) + ", b_" +
                                      std::to_string(k) + ")";
    fail(ErrorCode::NotLie, what);
  }
  NilpotentLieAlgebra l;
  l.ring_ = r;
  l.field_ = *f;
  const std::size_t n = r.dim();
  std::vector<Vector> current;
  for (std::size_t i = 0; i < n; ++i) current.push_back(r.basis_element(i));
  current = span_basis(*f, n, current);
  l.series_.push_back(current);
  while (!current.empty()) {
    std::vector<Vector> next;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& v : current) next.push_back(r.mul(r.basis_element(i), v));
    next = span_basis(*f, n, next);
    if (next.size() == current.size())
      fail(ErrorCode::NotNilpotent, "lower central series stabilizes at dimension " + std::to_string(next.size()));
    l.series_.push_back(next);
    current = std::move(next);
  }
  l.class_ = static_cast<unsigned>(l.series_.size() - 1);
  if (n > 0 && l.class_ == 0) l.class_ = 1;
  return l;
}

Rational BCHTable::coefficient(const std::string& word) const {
  for (const auto& t : terms)
    if (t.word == word) return t.coefficient;
  return 0;
}

const BCHTable& bch_table(unsigned cls) {
  if (cls == 0 || cls > kMaxClass)
    fail(ErrorCode::ClassTooLarge, "class " + std::to_string(cls) + " outside 1.." + std::to_string(kMaxClass));
  static std::mutex mutex;
  static std::map<unsigned, BCHTable> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(cls);
  if (it == cache.end()) it = cache.emplace(cls, build_table(cls)).first;
  return it->second;
}

Vector bch(const NilpotentLieAlgebra& l, const Vector& x, const Vector& y, unsigned cls) {
  if (cls > kMaxClass) fail(ErrorCode::ClassTooLarge, "class " + std::to_string(cls) + " exceeds " + std::to_string(kMaxClass));
  if (l.nilpotency_class() > cls)
    fail(ErrorCode::ClassTooLarge, "algebra has class " + std::to_string(l.nilpotency_class()) + " above " + std::to_string(cls));
  const std::size_t limit = std::max<unsigned>(l.nilpotency_class(), 1);
  const BCHTable& table = bch_table(std::max(cls, 1u));
  std::map<std::string, Vector> nested;
  std::function<const Vector&(const std::string&)> eval = [&](const std::string& w) -> const Vector& {
    auto it = nested.find(w);
    if (it != nested.end()) return it->second;
    Vector v = w.size() == 1 ? (w[0] == 'x' ? x : y) : l.bracket(w[0] == 'x' ? x : y, eval(w.substr(1)));
    return nested.emplace(w, std::move(v)).first->second;
  };
  Vector out = l.zero();
  for (const auto& t : table.terms) {
    if (t.word.size() > limit) break;
    const Vector& v = eval(t.word);
    if (!is_zero(v)) out = add(out, scale(Scalar(l.field(), t.coefficient), v));
  }
  return out;
}

Vector bch(const NilpotentLieAlgebra& l, const Vector& x, const Vector& y) {
  return bch(l, x, y, std::max(l.nilpotency_class(), 1u));
}

GroupElement group_element(std::shared_ptr<const NilpotentLieAlgebra> l, Vector log) {
  if (log.size() != l->dim()) fail(ErrorCode::DimensionMismatch, "log coordinates have the wrong length");
  for (const auto& c : log)
    if (c.domain() != l->field()) fail(ErrorCode::DomainMismatch, "log coordinates over the wrong field");
  return GroupElement{std::move(l), std::move(log)};
}

GroupElement group_identity(std::shared_ptr<const NilpotentLieAlgebra> l) {
  Vector z = l->zero();
  return GroupElement{std::move(l), std::move(z)};
}

GroupElement group_mul(const GroupElement& g, const GroupElement& h) {
  check_same(g, h);
  return GroupElement{g.algebra, bch(*g.algebra, g.log, h.log)};
}

GroupElement group_inv(const GroupElement& g) {
  return GroupElement{g.algebra, scale(-Scalar::one(g.algebra->field()), g.log)};
}

GroupElement group_pow(const GroupElement& g, const Rational& a) {
  return GroupElement{g.algebra, scale(Scalar(g.algebra->field(), a), g.log)};
}

CommutatorReport group_commutator(const GroupElement& g, const GroupElement& h) {
  check_same(g, h);
  const NilpotentLieAlgebra& l = *g.algebra;
  CommutatorReport out;
  out.value = group_mul(group_mul(group_inv(g), group_inv(h)), group_mul(g, h));
  out.bracket = l.bracket(g.log, h.log);
  out.trivial_iff_bracket_zero = out.value.is_identity() == is_zero(out.bracket);
  const auto& series = l.series();
  const std::vector<Vector> l3 = series.size() > 2 ? series[2] : std::vector<Vector>{};
  out.leading_term_matches = in_span(l3, sub(out.value.log, out.bracket));
  out.class_two_exact = out.value.log == out.bracket;
  return out;
}

CorrespondenceReport central_series_and_center(const std::shared_ptr<const NilpotentLieAlgebra>& lp,
                                               std::uint64_t seed) {
  const NilpotentLieAlgebra& l = *lp;
  const Domain& d = l.field();
  const std::size_t n = l.dim();
  const unsigned c = l.nilpotency_class();
  const auto& series = l.series();
  Rng rng(seed);
  CorrespondenceReport out;
  std::vector<GroupElement> gens;
  for (std::size_t j = 0; j < n; ++j) gens.push_back(group_element(lp, unit_vector(d, n, j)));
  auto level = [&](std::size_t i) -> const std::vector<Vector>& {
    static const std::vector<Vector> empty;
    return i < series.size() ? series[i] : empty;
  };
  for (unsigned i = 0; i < c; ++i) {
    const auto& li = level(i);
    SeriesLevel lv;
    lv.closed = true;
    for (int t = 0; t < 8; ++t) {
      Vector a = random_element(rng, d, li, n), b = random_element(rng, d, li, n);
      if (!in_span(li, bch(l, a, b))) lv.closed = false;
    }
    for (const auto& a : li)
      for (const auto& b : li)
        if (!in_span(li, bch(l, a, b))) lv.closed = false;
    lv.lands = true;
    std::vector<Vector> comms = level(i + 2);
    for (const auto& a : li)
      for (const auto& g : gens) {
        Vector v = group_commutator(group_element(lp, a), g).value.log;
        if (!in_span(level(i + 1), v)) lv.lands = false;
        comms.push_back(v);
      }
    for (int t = 0; t < 8; ++t) {
      Vector a = random_element(rng, d, li, n), y = random_element(rng, d, series[0], n);
      if (!in_span(level(i + 1), group_commutator(group_element(lp, a), group_element(lp, y)).value.log))
        lv.lands = false;
    }
    lv.generates = same_span(d, n, comms, level(i + 1));
    out.levels.push_back(lv);
  }
  out.annihilator = rings::annihilator(l.ring()).basis;

  // log [exp(t x), exp(b_j)] is a polynomial in t of degree < c with no
  // constant term; a central x kills its linear coefficient for every j.
  const std::size_t deg = std::max<unsigned>(c, 1);
  Matrix vander(d, deg, deg);
  for (std::size_t t = 0; t < deg; ++t) {
    Scalar pw = Scalar(d, static_cast<long>(t + 1));
    Scalar acc = pw;
    for (std::size_t k = 0; k < deg; ++k) {
      vander(t, k) = acc;
      acc *= pw;
    }
  }
  Matrix vinv = *inverse(vander);
  Matrix linear(d, n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector lin = zero_vector(d, n);
      for (std::size_t t = 0; t < deg; ++t) {
        GroupElement g = group_element(lp, scale(Scalar(d, static_cast<long>(t + 1)), unit_vector(d, n, i)));
        lin = add(lin, scale(vinv(0, t), group_commutator(g, gens[j]).value.log));
      }
      for (std::size_t k = 0; k < n; ++k) linear(j * n + k, i) = lin[k];
    }
  Matrix kb = kernel_basis(linear);
  for (std::size_t col = 0; col < kb.cols(); ++col) out.group_center.push_back(kb.column(col));
  out.center_matches = same_span(d, n, out.group_center, out.annihilator);
  out.center_verified = true;
  std::vector<Vector> samples = out.group_center;
  for (int t = 0; t < 8 && !out.group_center.empty(); ++t) samples.push_back(random_element(rng, d, out.group_center, n));
  for (const auto& z : samples) {
    GroupElement g = group_element(lp, z);
    for (const auto& h : gens)
      if (!group_commutator(g, h).value.is_identity()) out.center_verified = false;
    GroupElement h = group_element(lp, random_element(rng, d, series[0], n));
    if (!group_commutator(g, h).value.is_identity()) out.center_verified = false;
  }
  return out;
}

GroupDecomposition group_decompose(const std::shared_ptr<const NilpotentLieAlgebra>& lp,
                                   const artinian::SplitOptions& options) {
  const NilpotentLieAlgebra& l = *lp;
  GroupDecomposition out;
  out.ring = rings::decompose_char0(l.ring(), options);
  std::vector<std::vector<Vector>> parts;
  for (const auto& c : out.ring.components) {
    GroupFactor f;
    f.basis = c.basis;
    f.residue = c.factor.residue;
    f.nilpotency_class = verify_nilpotent_lie(c.ring).nilpotency_class();
    parts.push_back(f.basis);
    out.factors.push_back(std::move(f));
  }
  out.abelian = out.ring.addition_basis;
  parts.push_back(out.abelian);
  out.cross_commutators_trivial = true;
  Rng rng(options.seed);
  const Domain& d = l.field();
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      std::vector<Vector> xs = parts[a], ys = parts[b];
      if (!parts[a].empty()) xs.push_back(random_element(rng, d, parts[a], l.dim()));
      if (!parts[b].empty()) ys.push_back(random_element(rng, d, parts[b], l.dim()));
      for (const auto& x : xs)
        for (const auto& y : ys)
          if (!group_commutator(group_element(lp, x), group_element(lp, y)).value.is_identity())
            out.cross_commutators_trivial = false;
    }
  return out;
}

}  // namespace scalarkit::malcev
