#include "scalarkit/rings.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <unordered_set>

namespace scalarkit::rings {

namespace {

constexpr std::uint64_t kValueEnumerationLimit = 1u << 18;
constexpr std::uint64_t kBasisTupleLimit = 1u << 20;

const Domain& require_field(const RingPresentation& r, const char* op) {
  const auto& f = r.carrier().field();
  if (!f) fail(ErrorCode::NonFieldDomain, std::string(op) + " needs a field carrier");
  return *f;
}

std::vector<Vector> standard_basis(const ModuleDesc& m) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < m.size(); ++i) out.push_back(m.basis_element(i));
  return out;
}

Vector lift(const Domain& d, std::size_t n, const std::vector<Vector>& reps, const Vector& coords) {
  Vector out = zero_vector(d, n);
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (!coords[k].is_zero()) out = add(out, scale(coords[k], reps[k]));
  return out;
}

Matrix poly_at(const Poly& p, const Matrix& m) {
  Matrix out(m.domain(), m.rows(), m.cols());
  for (int k = p.degree(); k >= 0; --k)
    out = out * m + Matrix::identity(m.domain(), m.rows()) * p.coeff(static_cast<std::size_t>(k));
  return out;
}

bool in_span(const std::vector<Vector>& basis, const Vector& v) {
  return is_zero(v) || coordinates_in(basis, v).has_value();
}

}  // namespace

// ---------------------------------------------------------------- presentation

RingPresentation::RingPresentation(BilinearMap multiplication) : f_(std::move(multiplication)) {
  if (!(f_.domain() == f_.codomain())) fail(ErrorCode::InvalidStructure, "ring multiplication must map R x R -> R");
  compute_flags();
}

RingPresentation::RingPresentation(ModuleDesc carrier, std::vector<std::vector<Vector>> table)
    : RingPresentation(BilinearMap(carrier, carrier, std::move(table))) {}

void RingPresentation::compute_flags() {
  const std::size_t n = dim();
  auto b = standard_basis(carrier());
  for (std::size_t i = 0; i < n && commutative_; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (f_.at(i, j) != f_.at(j, i)) {
        commutative_ = false;
        break;
      }
  for (std::size_t i = 0; i < n && !lie_witness_; ++i) {
    if (!is_zero(f_.at(i, i))) lie_witness_ = std::array<std::size_t, 3>{i, i, i};
    for (std::size_t j = i + 1; j < n && !lie_witness_; ++j)
      if (!is_zero(add(f_.at(i, j), f_.at(j, i)))) lie_witness_ = std::array<std::size_t, 3>{i, j, j};
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (!associator_witness_ && mul(f_.at(i, j), b[k]) != mul(b[i], f_.at(j, k)))
          associator_witness_ = std::array<std::size_t, 3>{i, j, k};
        if (!lie_witness_ && i < j && j < k) {
          Vector jac = add(add(mul(b[i], f_.at(j, k)), mul(b[j], f_.at(k, i))), mul(b[k], f_.at(i, j)));
          if (!is_zero(jac)) lie_witness_ = std::array<std::size_t, 3>{i, j, k};
        }
      }
}

RingPresentation zero_ring(const ModuleDesc& carrier) {
  std::vector<std::vector<Vector>> t(carrier.size(), std::vector<Vector>(carrier.size(), carrier.zero()));
  return RingPresentation(carrier, std::move(t));
}

RingPresentation direct_product(const RingPresentation& a, const RingPresentation& b) {
  ModuleDesc m = a.carrier() + b.carrier();
  const std::size_t na = a.dim(), nb = b.dim();
  std::vector<std::vector<Vector>> t(na + nb, std::vector<Vector>(na + nb, m.zero()));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < na; ++k) t[i][j][k] = a.multiplication().at(i, j)[k];
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < nb; ++k) t[na + i][na + j][na + k] = b.multiplication().at(i, j)[k];
  return RingPresentation(m, std::move(t));
}

RingPresentation subring(const RingPresentation& r, const Submodule& part) {
  const ModuleDesc& m = r.carrier();
  return RingPresentation(r.multiplication().restrict(part, part.desc, [&](const Vector& v) {
    auto c = modules::coordinates(m, part, v);
    if (!c) fail(ErrorCode::InvalidStructure, "product leaves the subring: " + scalarkit::to_string(v));
    return *c;
  }));
}

// ---------------------------------------------------------------- ideals

Submodule annihilator(const RingPresentation& r) { return bilinear::two_sided_kernel(r.multiplication()); }

Submodule ideal_closure(const RingPresentation& r, const std::vector<Vector>& generators) {
  const ModuleDesc& m = r.carrier();
  Submodule current = modules::span(m, generators);
  auto basis = standard_basis(m);
  for (;;) {
    std::vector<Vector> grown = current.basis;
    for (const auto& v : current.basis)
      for (const auto& b : basis) {
        grown.push_back(r.mul(v, b));
        grown.push_back(r.mul(b, v));
      }
    Submodule next = modules::span(m, grown);
    if (modules::is_contained(m, next, current)) return current;
    current = std::move(next);
  }
}

Submodule square_ideal(const RingPresentation& r) {
  std::vector<Vector> products;
  for (std::size_t i = 0; i < r.dim(); ++i)
    for (std::size_t j = 0; j < r.dim(); ++j) products.push_back(r.multiplication().at(i, j));
  return ideal_closure(r, products);
}

bool is_regular(const RingPresentation& r) {
  return modules::is_contained(r.carrier(), annihilator(r), square_ideal(r));
}

// ---------------------------------------------------------------- words

Word Word::parse(const std::string& text) {
  Word w;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto error = [&](const std::string& what) {
    fail(ErrorCode::InvalidStructure, "word '" + text + "' at column " + std::to_string(pos + 1) + ": " + what);
  };
  std::function<int()> term;
  std::function<int()> factor = [&]() -> int {
    skip();
    if (pos >= text.size()) error("expected a variable or '('");
    if (text[pos] == '(') {
      ++pos;
      int inner = term();
      skip();
      if (pos >= text.size() || text[pos] != ')') error("expected ')'");
      ++pos;
      return inner;
    }
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    if (start == pos) error("expected a variable");
    std::string name = text.substr(start, pos - start);
    auto it = std::find(w.vars_.begin(), w.vars_.end(), name);
    int var = static_cast<int>(it - w.vars_.begin());
    if (it == w.vars_.end()) w.vars_.push_back(name);
    w.nodes_.push_back({var, -1, -1});
    return static_cast<int>(w.nodes_.size()) - 1;
  };
  term = [&]() -> int {
    int left = factor();
    for (;;) {
      skip();
      if (pos >= text.size() || text[pos] != '*') return left;
      ++pos;
      int right = factor();
      w.nodes_.push_back({-1, left, right});
      left = static_cast<int>(w.nodes_.size()) - 1;
    }
  };
  w.root_ = term();
  skip();
  if (pos != text.size()) error("unexpected character");
  return w;
}

std::vector<std::size_t> Word::occurrences() const {
  std::vector<std::size_t> out(vars_.size(), 0);
  for (const auto& n : nodes_)
    if (n.var >= 0) ++out[static_cast<std::size_t>(n.var)];
  return out;
}

bool Word::multilinear() const {
  auto occ = occurrences();
  return std::all_of(occ.begin(), occ.end(), [](std::size_t c) { return c == 1; });
}

Vector Word::eval(const RingPresentation& r, const std::vector<Vector>& args, int node) const {
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  if (n.var >= 0) return args[static_cast<std::size_t>(n.var)];
  return r.mul(eval(r, args, n.left), eval(r, args, n.right));
}

Vector Word::evaluate(const RingPresentation& r, const std::vector<Vector>& args) const {
  if (args.size() != vars_.size()) fail(ErrorCode::DimensionMismatch, "word arity mismatch");
  return eval(r, args, root_);
}

std::string Word::render(int node) const {
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  if (n.var >= 0) return vars_[static_cast<std::size_t>(n.var)];
  auto side = [&](int c) {
    std::string s = render(c);
    return nodes_[static_cast<std::size_t>(c)].var >= 0 ? s : "(" + s + ")";
  };
  return side(n.left) + "*" + side(n.right);
}

std::string Word::to_string() const { return render(root_); }

namespace {

// Values of the full polarization on basis tuples: one slot per occurrence,
// each variable replaced by sums over slot subsets with alternating signs.
// In characteristic 0, or above every multiplicity, these span the same
// space as all values of the word.
std::vector<Vector> polarized_values(const RingPresentation& r, const Word& w) {
  auto occ = w.occurrences();
  std::size_t slots = 0;
  for (auto c : occ) slots += c;
  const std::size_t n = r.dim();
  std::uint64_t total = 1;
  for (std::size_t s = 0; s < slots; ++s) {
    total *= std::max<std::size_t>(n, 1);
    if (total > kBasisTupleLimit) fail(ErrorCode::EnumerationTooLarge, "too many basis tuples for the word");
  }
  std::vector<Vector> out;
  std::vector<std::size_t> idx(slots, 0);
  std::vector<std::size_t> owner;
  for (std::size_t v = 0; v < occ.size(); ++v)
    for (std::size_t k = 0; k < occ[v]; ++k) owner.push_back(v);
  const ModuleDesc& m = r.carrier();
  std::set<std::vector<std::size_t>> seen;
  for (std::uint64_t code = 0; code < total && n > 0; ++code) {
    std::uint64_t c = code;
    for (std::size_t s = 0; s < slots; ++s) {
      idx[s] = c % n;
      c /= n;
    }
    // canonical form: sorted within each variable
    std::vector<std::size_t> key = idx;
    std::size_t off = 0;
    for (auto cnt : occ) {
      std::sort(key.begin() + static_cast<long>(off), key.begin() + static_cast<long>(off + cnt));
      off += cnt;
    }
    if (!seen.insert(key).second) continue;
    Vector sum = m.zero();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots); ++mask) {
      std::vector<Vector> args(occ.size(), m.zero());
      bool ok = true;
      for (std::size_t s = 0; s < slots; ++s)
        if (mask >> s & 1) args[owner[s]] = add(args[owner[s]], m.basis_element(key[s]));
      off = 0;
      for (std::size_t v = 0; v < occ.size() && ok; ++v) {
        bool any = false;
        for (std::size_t k = 0; k < occ[v]; ++k) any = any || (mask >> (off + k) & 1);
        ok = any;
        off += occ[v];
      }
      if (!ok) continue;
      Vector val = w.evaluate(r, args);
      const bool negative = (slots - static_cast<std::size_t>(__builtin_popcountll(mask))) % 2 == 1;
      sum = negative ? sub(sum, val) : add(sum, val);
    }
    out.push_back(sum);
  }
  return out;
}

std::vector<Vector> basis_tuple_values(const RingPresentation& r, const Word& w,
                                       std::vector<std::vector<std::size_t>>* tuples) {
  const std::size_t n = r.dim(), m = w.arity();
  std::uint64_t total = 1;
  for (std::size_t s = 0; s < m; ++s) {
    total *= std::max<std::size_t>(n, 1);
    if (total > kBasisTupleLimit) fail(ErrorCode::EnumerationTooLarge, "too many basis tuples for the word");
  }
  std::vector<Vector> out;
  for (std::uint64_t code = 0; code < total && n > 0; ++code) {
    std::uint64_t c = code;
    std::vector<std::size_t> t(m);
    std::vector<Vector> args;
    for (std::size_t s = 0; s < m; ++s) {
      t[s] = c % n;
      c /= n;
      args.push_back(r.basis_element(t[s]));
    }
    out.push_back(w.evaluate(r, args));
    if (tuples) tuples->push_back(t);
  }
  return out;
}

}  // namespace

VerbalIdeal verbal_ideal(const RingPresentation& r, const Word& w, unsigned search_bound) {
  const ModuleDesc& m = r.carrier();
  VerbalIdeal out;
  const auto& field = m.field();
  auto size = bilinear::finite_size(m, kValueEnumerationLimit);
  std::uint64_t tuples = 1;
  bool enumerate = size.has_value();
  for (std::size_t s = 0; s < w.arity() && enumerate; ++s) {
    if (tuples > kValueEnumerationLimit / std::max<std::uint64_t>(*size, 1)) enumerate = false;
    tuples *= *size;
  }
  if (enumerate) {
    const std::uint64_t p = field->modulus().get_ui();
    std::unordered_set<std::uint64_t> codes;
    std::vector<Vector> values;
    for (std::uint64_t code = 0; code < tuples; ++code) {
      std::uint64_t c = code;
      std::vector<Vector> args;
      for (std::size_t s = 0; s < w.arity(); ++s) {
        args.push_back(bilinear::decode(c % *size, *field, m.size()));
        c /= *size;
      }
      Vector v = w.evaluate(r, args);
      if (codes.insert(bilinear::encode(v, p)).second) values.push_back(v);
    }
    out.values = modules::span(m, values);
    out.ideal = ideal_closure(r, out.values.basis);
    std::vector<std::uint64_t> sorted(codes.begin(), codes.end());
    std::sort(sorted.begin(), sorted.end());
    std::uint64_t target = 1;
    for (std::size_t k = 0; k < out.values.size(); ++k) target *= p;
    bilinear::WidthResult wr;
    if (out.values.is_zero()) {
      wr.exact = true;
    } else {
      auto s = bilinear::sumset_width(sorted, field->modulus(), m.size(), target, search_bound);
      if (!s) fail(ErrorCode::SearchBoundExceeded, "verbal width exceeds " + std::to_string(search_bound));
      wr.value = *s;
      wr.exact = true;
    }
    wr.method = "sumset enumeration";
    out.width = wr;
    out.method = "all tuples";
  } else if (w.multilinear()) {
    std::vector<std::vector<std::size_t>> tuple_list;
    auto values = basis_tuple_values(r, w, &tuple_list);
    out.values = modules::span(m, values);
    out.ideal = ideal_closure(r, out.values.basis);
    // Scalars pass into one argument, so each spanning value absorbs its coefficient.
    bilinear::WidthResult wr;
    wr.value = static_cast<unsigned>(out.values.size());
    wr.exact = out.values.size() <= 1 || w.arity() == 1;
    if (w.arity() == 1 && !out.values.is_zero()) wr.value = 1;
    wr.method = wr.exact ? "single value" : "span bound";
    out.width = wr;
    out.method = "basis tuples";
  } else {
    if (!field) fail(ErrorCode::UnsupportedDomain, "non-multilinear words need a field carrier");
    auto occ = w.occurrences();
    const Integer ch = field->characteristic();
    const std::size_t top = *std::max_element(occ.begin(), occ.end());
    if (ch != 0 && ch <= Integer(static_cast<unsigned long>(top)))
      fail(ErrorCode::UnsupportedDomain, "characteristic does not exceed the variable multiplicities");
    out.values = modules::span(m, polarized_values(r, w));
    out.ideal = ideal_closure(r, out.values.basis);
    out.method = "polarized basis tuples";
  }
  out.values_span_ideal = modules::same_submodule(m, out.values, out.ideal);
  return out;
}

// ---------------------------------------------------------------- foundation

FoundationAddition foundation_addition(const RingPresentation& r) {
  const ModuleDesc& m = r.carrier();
  FoundationAddition out;
  out.annihilator = annihilator(r);
  out.square = square_ideal(r);
  out.delta = modules::intersection(m, out.annihilator, out.square);
  std::vector<Vector> delta_in_ann;
  for (const auto& v : out.delta.basis) delta_in_ann.push_back(*modules::coordinates(m, out.annihilator, v));
  auto r0 = modules::split_complement(delta_in_ann, out.annihilator.desc);
  if (!r0) fail(ErrorCode::NoSplit, "Ann(R) meet R^2 has no complement in Ann(R): the addition does not exist");
  out.addition.desc = r0->desc;
  for (const auto& c : r0->basis) out.addition.basis.push_back(modules::embed(m, out.annihilator, c));
  std::vector<Vector> both = out.annihilator.basis;
  both.insert(both.end(), out.square.basis.begin(), out.square.basis.end());
  auto rest = modules::split_complement(both, m);
  if (!rest) fail(ErrorCode::NoSplit, "Ann(R) + R^2 has no complement in R: no foundation");
  std::vector<Vector> gens = out.square.basis;
  gens.insert(gens.end(), rest->basis.begin(), rest->basis.end());
  out.foundation = modules::span(m, gens);
  out.foundation_ring = subring(r, out.foundation);
  out.addition_ring = zero_ring(out.addition.desc);
  return out;
}

// ---------------------------------------------------------------- decomposition

RingPresentation DecompositionReport::block_ring() const {
  RingPresentation acc = zero_ring(ModuleDesc::vector_space(field, 0));
  for (const auto& c : components) acc = direct_product(acc, c.ring);
  return direct_product(acc, addition);
}

std::vector<std::vector<Vector>> DecompositionReport::reassembled_table() const {
  RingPresentation block = block_ring();
  const std::size_t n = witness.rows();
  auto inv = inverse(witness);
  if (!inv) fail(ErrorCode::InvalidStructure, "decomposition witness is singular");
  std::vector<std::vector<Vector>> t(n, std::vector<Vector>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = witness * block.mul(inv->column(i), inv->column(j));
  return t;
}

namespace {

struct SplitPiece {
  std::vector<Vector> basis;  // in foundation coordinates
  Matrix action;              // generator on the piece coordinates
  Poly minpoly;
};

// e_i R^2 plus lifts of an L-stable complement of e_i eta(R^2) in e_i (R / Ann).
SplitPiece split_piece(const RingPresentation& rf, const scalar_rings::RingScalarReport& rs,
                       const artinian::CommutativeAlgebra& alg, const artinian::LocalFactor& lf) {
  const Domain& d = *rf.carrier().field();
  const std::size_t n = rf.dim(), q = rs.quotient_basis.size();
  const auto& p = rs.report;
  Matrix e = p.algebra.element(lf.idempotent);
  auto reps = artinian::field_of_representatives(alg, lf);
  Matrix s = p.algebra.element(reps.lifted_generator);
  const std::size_t deg = static_cast<std::size_t>(reps.minpoly.degree());
  Matrix rho_e = p.image_action(rs.induced, e);
  Matrix rho_s = p.image_action(rs.induced, s);

  SplitPiece piece;
  piece.minpoly = reps.minpoly;
  std::vector<Vector> square_part;
  for (std::size_t t = 0; t < p.image_basis.size(); ++t)
    square_part.push_back(lift(d, n, p.image_basis, rho_e.column(t)));
  square_part = span_basis(d, n, square_part);

  std::vector<Vector> covered;
  for (const auto& y : square_part) covered.push_back(rs.project(y));
  covered = span_basis(d, q, covered);
  std::vector<Vector> lifted;
  for (std::size_t c = 0; c < q; ++c) {
    Vector w = e.column(c);
    if (in_span(covered, w)) continue;
    Vector orbit = w;
    for (std::size_t k = 0; k < deg; ++k) {
      covered.push_back(orbit);
      lifted.push_back(lift(d, n, rs.quotient_basis, orbit));
      orbit = s * orbit;
    }
    covered = span_basis(d, q, covered);
  }
  piece.basis = square_part;
  piece.basis.insert(piece.basis.end(), lifted.begin(), lifted.end());

  const std::size_t k = piece.basis.size(), sq = square_part.size();
  std::vector<Vector> cols;
  for (std::size_t a = 0; a < sq; ++a) {
    Vector acted = lift(d, n, p.image_basis, rho_s * p.image_coordinates(square_part[a]));
    cols.push_back(*coordinates_in(piece.basis, acted));
  }
  for (std::size_t a = 0; a < lifted.size(); ++a) {
    Vector col = zero_vector(d, k);
    if ((a + 1) % deg != 0) {
      col[sq + a + 1] = Scalar::one(d);
    } else {
      const std::size_t first = a + 1 - deg;
      for (std::size_t t = 0; t < deg; ++t) col[sq + first + t] = -reps.minpoly.coeff(t);
    }
    cols.push_back(col);
  }
  piece.action = Matrix::from_columns(d, k, cols);
  return piece;
}

bool certify_enrichment(const RingPresentation& ring, const Matrix& action, const Poly& minpoly) {
  if (!poly_at(minpoly, action).is_zero()) return false;
  const std::size_t n = ring.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector bi = ring.basis_element(i), bj = ring.basis_element(j);
      Vector prod = action * ring.mul(bi, bj);
      if (ring.mul(action * bi, bj) != prod || ring.mul(bi, action * bj) != prod) return false;
    }
  return true;
}

}  // namespace

DecompositionReport decompose(const RingPresentation& r, const artinian::SplitOptions& options) {
  const Domain& d = require_field(r, "decompose");
  const std::size_t n = r.dim();
  DecompositionReport out;
  out.field = d;
  FoundationAddition fa = foundation_addition(r);
  out.delta = fa.delta.basis;
  out.addition_basis = fa.addition.basis;
  out.addition = zero_ring(ModuleDesc::vector_space(d, fa.addition.size()));
  std::vector<Vector> columns;
  if (!fa.square.is_zero()) {
    const RingPresentation& rf = fa.foundation_ring;
    auto rs = scalar_rings::a_of_r(rf.multiplication());
    auto alg = scalar_rings::as_commutative_algebra(rs.report.algebra);
    auto factors = artinian::local_decomposition(alg, options);
    for (const auto& lf : factors) {
      SplitPiece piece = split_piece(rf, rs, alg, lf);
      Component c;
      c.factor = lf;
      Submodule part{ModuleDesc::vector_space(d, piece.basis.size()), piece.basis};
      c.ring = subring(rf, part);
      for (const auto& v : piece.basis) c.basis.push_back(modules::embed(r.carrier(), fa.foundation, v));
      c.scalar_action = piece.action;
      c.scalar_minpoly = piece.minpoly;
      c.enrichment_certified = certify_enrichment(c.ring, c.scalar_action, c.scalar_minpoly);
      auto own = scalar_rings::a_of_r(c.ring.multiplication());
      auto own_alg = scalar_rings::as_commutative_algebra(own.report.algebra);
      auto own_factors = artinian::local_decomposition(own_alg, options);
      c.scalar_dim = own.report.algebra.dim();
      c.scalars_local = own_factors.size() == 1;
      if (c.scalars_local) c.r_k = artinian::j_series(own_alg, own_factors[0]).r_k;
      columns.insert(columns.end(), c.basis.begin(), c.basis.end());
      out.components.push_back(std::move(c));
    }
    out.scalars = std::move(rs);
  }
  columns.insert(columns.end(), out.addition_basis.begin(), out.addition_basis.end());
  if (columns.size() != n) fail(ErrorCode::InvalidStructure, "components do not span the ring");
  out.witness = Matrix::from_columns(d, n, columns);
  return out;
}

DecompositionReport decompose_char0(const RingPresentation& r, const artinian::SplitOptions& options) {
  const Domain& d = require_field(r, "decompose_char0");
  if (d.characteristic() != 0) fail(ErrorCode::UnsupportedDomain, "decompose_char0 needs characteristic 0");
  return decompose(r, options);
}

// ---------------------------------------------------------------- mixed and bounded

CentralSplit central_split_mixed(const RingPresentation& r) {
  CentralSplit out;
  auto ts = bilinear::torsion_split(r.multiplication());
  out.split = ts.domain_split;
  out.divisible = RingPresentation(ts.divisible);
  out.bounded = RingPresentation(ts.bounded);
  out.cross_annihilation = true;
  for (auto i : out.split.divisible_indices)
    for (auto j : out.split.bounded_indices)
      if (!is_zero(r.multiplication().at(i, j)) || !is_zero(r.multiplication().at(j, i))) out.cross_annihilation = false;
  // The blocks are complementary coordinate sets of a formal direct sum.
  out.intersection_order = 1;
  const ModuleDesc& md = out.divisible.carrier();
  Submodule ann = out.divisible.dim() ? annihilator(out.divisible) : Submodule{};
  out.torsion_in_annihilator = true;
  for (auto i : md.bounded_part())
    if (!modules::contains(md, ann, md.basis_element(i))) out.torsion_in_annihilator = false;
  return out;
}

namespace {

// Rings on sums of Z/p for one prime p are GF(p)-algebras.
RingPresentation as_prime_field_ring(const RingPresentation& r) {
  if (r.carrier().field()) return r;
  Integer p = 0;
  for (const auto& s : r.carrier().summands()) {
    if (s.kind != modules::SummandKind::Cyclic || !mpz_probab_prime_p(s.modulus.get_mpz_t(), 30) || (p != 0 && s.modulus != p))
      fail(ErrorCode::UnsupportedDomain, "decompose_bounded needs a finite field or Z/p summands for one prime p");
    p = s.modulus;
  }
  Domain f = Domain::prime_field(p);
  const std::size_t n = r.dim();
  std::vector<std::vector<Vector>> t(n, std::vector<Vector>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& c : r.multiplication().at(i, j)) t[i][j].emplace_back(f, c.value());
  return RingPresentation(ModuleDesc::vector_space(f, n), std::move(t));
}

}  // namespace

BoundedDecomposition decompose_bounded(const RingPresentation& input, const artinian::SplitOptions& options) {
  RingPresentation r = as_prime_field_ring(input);
  const Domain& d = *r.carrier().field();
  if (d.characteristic() == 0) fail(ErrorCode::UnsupportedDomain, "decompose_bounded needs positive characteristic");
  const std::size_t n = r.dim();
  BoundedDecomposition out;
  out.scalars = scalar_rings::a_of_r(r.multiplication());
  const auto& rs = out.scalars;
  auto alg = scalar_rings::as_commutative_algebra(rs.report.algebra);
  for (const auto& lf : artinian::local_decomposition(alg, options)) {
    Matrix e = rs.report.algebra.element(lf.idempotent);
    std::vector<Vector> gens = rs.annihilator;
    for (std::size_t c = 0; c < e.cols(); ++c) gens.push_back(lift(d, n, rs.quotient_basis, e.column(c)));
    QuasiFactor qf;
    qf.factor = lf;
    qf.basis = span_basis(d, n, gens);
    qf.ring = subring(r, Submodule{ModuleDesc::vector_space(d, qf.basis.size()), qf.basis});
    out.factors.push_back(std::move(qf));
  }
  out.mutual_annihilation = true;
  for (std::size_t a = 0; a < out.factors.size(); ++a)
    for (std::size_t b = 0; b < out.factors.size(); ++b) {
      if (a == b) continue;
      for (const auto& x : out.factors[a].basis)
        for (const auto& y : out.factors[b].basis)
          if (!is_zero(r.mul(x, y))) out.mutual_annihilation = false;
    }
  return out;
}

// ---------------------------------------------------------------- models

namespace {

// Basis adapted to R > R^2 > R^3 > ..., built from the deepest power up out
// of iterated products, so its constants stay inside the field they generate.
std::vector<Vector> special_basis(const RingPresentation& r) {
  const Domain& d = *r.carrier().field();
  const std::size_t n = r.dim();
  std::vector<std::vector<Vector>> layers;  // spanning products of each power
  std::vector<Vector> current;
  for (std::size_t i = 0; i < n; ++i) current.push_back(r.basis_element(i));
  layers.push_back(current);
  for (;;) {
    std::vector<Vector> next;
    for (const auto& x : current)
      for (std::size_t i = 0; i < n; ++i) {
        next.push_back(r.mul(x, r.basis_element(i)));
        next.push_back(r.mul(r.basis_element(i), x));
      }
    std::vector<Vector> picked;
    for (const auto& v : next)
      if (!in_span(picked, v)) picked.push_back(v);
    if (picked.empty() || picked.size() == span_basis(d, n, current).size()) break;
    layers.push_back(picked);
    current = picked;
  }
  std::vector<Vector> basis;
  for (auto it = layers.rbegin(); it != layers.rend(); ++it)
    for (const auto& v : *it)
      if (!in_span(basis, v)) basis.push_back(v);
  return basis;
}

Vector as_base_vector(const Scalar& c) {
  Vector out;
  const Domain base = c.domain().base();
  for (const auto& q : c.coefficients()) out.emplace_back(base, q);
  return out;
}

}  // namespace

ModelConstruction model_construct(const RingPresentation& component, const Domain& k) {
  const Domain& f = require_field(component, "model_construct");
  const std::size_t n = component.dim();
  if (!component.multiplication().is_zero()) {
    auto rs = scalar_rings::a_of_r(component.multiplication());
    auto alg = scalar_rings::as_commutative_algebra(rs.report.algebra);
    if (artinian::local_decomposition(alg).size() != 1)
      fail(ErrorCode::InvalidStructure, "model_construct expects an indecomposable component");
  }
  ModelConstruction out;
  out.special_basis = special_basis(component);
  std::vector<std::vector<Vector>> table(n, std::vector<Vector>(n));
  std::vector<Scalar> constants;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      table[i][j] = *coordinates_in(out.special_basis, component.mul(out.special_basis[i], out.special_basis[j]));
      constants.insert(constants.end(), table[i][j].begin(), table[i][j].end());
    }
  out.special = RingPresentation(component.carrier(), table);

  if (f.characteristic() != k.characteristic())
    fail(ErrorCode::ExtensionNotOverK0, "K has a different characteristic from k0");
  const bool extension = f.kind() == DomainKind::Extension;
  const Domain base = extension ? f.base() : f;
  // k0 as the base-span of products of the constants.
  std::vector<Vector> k0_span;
  std::vector<Scalar> k0_elems;
  if (extension) {
    std::vector<Scalar> frontier{Scalar::one(f)};
    while (!frontier.empty()) {
      std::vector<Scalar> grown;
      for (const auto& x : frontier) {
        if (in_span(k0_span, as_base_vector(x))) continue;
        k0_span.push_back(as_base_vector(x));
        k0_elems.push_back(x);
        for (const auto& c : constants)
          if (!c.is_zero()) grown.push_back(x * c);
      }
      frontier = std::move(grown);
    }
  }
  out.k0_degree = extension ? k0_span.size() : 1;
  auto read_over_k = [&](const std::function<Scalar(const Scalar&)>& map) {
    std::vector<std::vector<Vector>> t(n, std::vector<Vector>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& c : table[i][j]) t[i][j].push_back(map(c));
    return RingPresentation(ModuleDesc::vector_space(k, n), std::move(t));
  };
  if (out.k0_degree == 1) {
    out.k0 = base;
    if (k.kind() == DomainKind::Extension ? k.base() != base : k != base)
      fail(ErrorCode::ExtensionNotOverK0, "K is not an extension of " + base.to_string());
    out.model = read_over_k([&](const Scalar& c) { return Scalar(k, c.coefficients()[0]); });
    return out;
  }
  // A primitive element of k0: the first constant combination of full degree.
  auto minpoly_of = [&](const Scalar& g) {
    std::vector<Vector> powers;
    Scalar x = Scalar::one(f);
    for (;;) {
      Vector v = as_base_vector(x);
      auto c = coordinates_in(powers, v);
      if (c && !powers.empty()) {
        std::vector<Scalar> coeffs;
        for (const auto& s : *c) coeffs.push_back(-s);
        coeffs.push_back(Scalar::one(base));
        return Poly(base, coeffs);
      }
      powers.push_back(v);
      x = x * g;
    }
  };
  Scalar gamma = Scalar::one(f);
  Poly g;
  bool found = false;
  for (std::size_t a = 0; a < k0_elems.size() && !found; ++a)
    for (long lambda = 0; lambda < 8 && !found; ++lambda) {
      Scalar cand = k0_elems[a];
      if (a + 1 < k0_elems.size()) cand = cand + Scalar(f, lambda) * k0_elems[a + 1];
      Poly mp = minpoly_of(cand);
      if (static_cast<std::size_t>(mp.degree()) == out.k0_degree) {
        gamma = cand;
        g = mp;
        found = true;
      }
    }
  if (!found) fail(ErrorCode::UnsupportedDegree, "no primitive element found for k0");
  std::vector<Rational> gq;
  for (const auto& c : g.coefficients()) gq.push_back(c.value());
  out.k0 = out.k0_degree == f.degree() ? f : Domain::extension(base, gq);
  if (k.kind() != DomainKind::Extension || k.base() != base)
    fail(ErrorCode::ExtensionNotOverK0, "K does not contain a root of " + g.to_string());
  std::vector<Scalar> kc;
  for (const auto& c : g.coefficients()) kc.emplace_back(k, c.value());
  auto roots = roots_in_field(Poly(k, kc));
  if (roots.empty()) fail(ErrorCode::ExtensionNotOverK0, "K does not contain a root of " + g.to_string());
  Scalar root = *std::min_element(roots.begin(), roots.end());
  if (k == f)
    for (const auto& rt : roots)
      if (rt == gamma) root = rt;
  std::vector<Vector> gamma_powers;
  Scalar x = Scalar::one(f);
  for (std::size_t t = 0; t < out.k0_degree; ++t) {
    gamma_powers.push_back(as_base_vector(x));
    x = x * gamma;
  }
  out.model = read_over_k([&](const Scalar& c) {
    Vector coeffs = *coordinates_in(gamma_powers, as_base_vector(c));
    Scalar acc = Scalar::zero(k), pw = Scalar::one(k);
    for (const auto& a : coeffs) {
      acc += Scalar(k, a.value()) * pw;
      pw *= root;
    }
    return acc;
  });
  return out;
}

CategoricityVerdict categoricity_check(const DecompositionReport& report) {
  CategoricityVerdict v;
  v.components = report.components.size();
  v.addition_zero = report.addition.dim() == 0;
  v.satisfied = v.components == 1 && v.addition_zero;
  if (v.satisfied)
    v.reason = "directly indecomposable without zero multiplication";
  else if (v.components == 0)
    v.reason = "zero multiplication";
  else if (!v.addition_zero)
    v.reason = "nonzero addition";
  else
    v.reason = "decomposable";
  v.hypothesis = "k uncountable and algebraically closed (not computed)";
  return v;
}

}  // namespace scalarkit::rings
