#include "scalarkit/artinian.hpp"

#include <algorithm>
#include <sstream>

namespace scalarkit::artinian {

namespace {

void require_field(const Domain& d) {
  if (!d.is_field()) fail(ErrorCode::NonFieldDomain, "commutative algebra over " + d.to_string());
}

Vector flatten(const Matrix& m) { return m.entries(); }

// Extended Euclid over a field: s with s*a = 1 mod m.
Poly inverse_mod(const Poly& a, const Poly& m) {
  Poly r0 = m, r1 = a % m;
  Poly s0(m.domain()), s1 = Poly::constant(Scalar::one(m.domain()));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    Poly s = s0 - q * s1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s;
  }
  if (r0.degree() != 0) fail(ErrorCode::NotInvertible, "polynomial not invertible modulo " + m.to_string());
  return (s0 * r0.leading().inverse()) % m;
}

std::vector<Vector> span_of(const Domain& d, std::size_t dim, const std::vector<Vector>& v) {
  return span_basis(d, dim, v);
}

}  // namespace

CommutativeAlgebra::CommutativeAlgebra(Domain base, std::vector<std::vector<Vector>> table, Vector unit)
    : base_(std::move(base)), table_(std::move(table)), unit_(std::move(unit)) {
  require_field(base_);
  const std::size_t n = unit_.size();
  if (table_.size() != n) fail(ErrorCode::DimensionMismatch, "structure tensor size differs from the unit length");
  for (const auto& row : table_) {
    if (row.size() != n) fail(ErrorCode::DimensionMismatch, "structure tensor row has wrong length");
    for (const auto& v : row) {
      if (v.size() != n) fail(ErrorCode::DimensionMismatch, "structure constant has wrong length");
      for (const auto& s : v)
        if (s.domain() != base_) fail(ErrorCode::DomainMismatch, "structure constant outside " + base_.to_string());
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (mul(unit_, basis_element(i)) != basis_element(i))
      fail(ErrorCode::InvalidStructure, "unit law fails on b" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (table_[i][j] != table_[j][i])
        fail(ErrorCode::InvalidStructure, "not commutative on b" + std::to_string(i) + ", b" + std::to_string(j));
      for (std::size_t k = 0; k < n; ++k)
        if (mul(table_[i][j], basis_element(k)) != mul(basis_element(i), table_[j][k]))
          fail(ErrorCode::InvalidStructure, "not associative on b" + std::to_string(i) + ", b" + std::to_string(j) +
                                                ", b" + std::to_string(k));
    }
  }
}

CommutativeAlgebra CommutativeAlgebra::polynomial_quotient(const Poly& m) {
  if (m.degree() < 1) fail(ErrorCode::InvalidStructure, "quotient by a constant polynomial");
  Poly mon = m.monic();
  const std::size_t n = static_cast<std::size_t>(mon.degree());
  const Domain& d = m.domain();
  auto coords = [&](const Poly& p) {
    Vector v = zero_vector(d, n);
    Poly r = p % mon;
    for (int k = 0; k <= r.degree(); ++k) v[k] = r.coeff(k);
    return v;
  };
  std::vector<Poly> powers;
  Poly x = Poly::x(d);
  Poly cur = Poly::constant(Scalar::one(d));
  for (std::size_t k = 0; k < 2 * n; ++k) {
    powers.push_back(cur);
    cur = cur * x;
  }
  std::vector<std::vector<Vector>> t(n, std::vector<Vector>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = coords(powers[i + j]);
  return CommutativeAlgebra(d, std::move(t), unit_vector(d, n, 0));
}

CommutativeAlgebra CommutativeAlgebra::from_matrices(const Domain& base, const std::vector<Matrix>& basis) {
  require_field(base);
  if (basis.empty()) fail(ErrorCode::InvalidStructure, "empty matrix algebra");
  const std::size_t k = basis.front().rows();
  std::vector<Vector> flat;
  for (const auto& m : basis) flat.push_back(flatten(m));
  auto coords = [&](const Matrix& m) {
    auto c = coordinates_in(flat, flatten(m));
    if (!c) fail(ErrorCode::InvalidStructure, "matrix span is not closed under composition");
    return *c;
  };
  const std::size_t n = basis.size();
  std::vector<std::vector<Vector>> t(n, std::vector<Vector>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = coords(basis[i] * basis[j]);
  return CommutativeAlgebra(base, std::move(t), coords(Matrix::identity(base, k)));
}

Vector CommutativeAlgebra::mul(const Vector& a, const Vector& b) const {
  Vector out = zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (b[j].is_zero()) continue;
      out = add(out, scale(a[i] * b[j], table_[i][j]));
    }
  }
  return out;
}

Vector CommutativeAlgebra::pow(const Vector& a, const Integer& e) const {
  Vector result = unit_;
  Vector b = a;
  Integer k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result = mul(result, b);
    k >>= 1;
    if (k > 0) b = mul(b, b);
  }
  return result;
}

Matrix CommutativeAlgebra::multiplication_matrix(const Vector& a) const {
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < dim(); ++j) cols.push_back(mul(a, basis_element(j)));
  return Matrix::from_columns(base_, dim(), cols);
}

Scalar CommutativeAlgebra::trace(const Vector& a) const {
  Matrix m = multiplication_matrix(a);
  Scalar t = Scalar::zero(base_);
  for (std::size_t i = 0; i < dim(); ++i) t += m(i, i);
  return t;
}

Poly CommutativeAlgebra::minimal_polynomial(const Vector& a, const Vector& e) const {
  std::vector<Vector> powers{e};
  Vector cur = e;
  for (std::size_t k = 0; k <= dim(); ++k) {
    cur = mul(cur, a);
    auto c = coordinates_in(powers, cur);
    if (c) {
      std::vector<Scalar> coeffs;
      for (const auto& s : *c) coeffs.push_back(-s);
      coeffs.push_back(Scalar::one(base_));
      return Poly(base_, coeffs);
    }
    powers.push_back(cur);
  }
  fail(ErrorCode::InvalidStructure, "minimal polynomial search did not terminate");
}

Vector CommutativeAlgebra::evaluate(const Poly& p, const Vector& a, const Vector& e) const {
  Vector out = zero();
  for (int k = p.degree(); k >= 0; --k) out = add(mul(out, a), scale(p.coeff(k), e));
  return out;
}

std::optional<Vector> CommutativeAlgebra::inverse_in(const Vector& a, const Vector& e) const {
  auto sol = solve(multiplication_matrix(a), e);
  if (!sol) return std::nullopt;
  return mul(e, sol->particular);
}

bool CommutativeAlgebra::is_nilpotent(const Vector& a) const {
  Vector cur = a;
  for (std::size_t k = 0; k <= dim(); ++k) {
    if (scalarkit::is_zero(cur)) return true;
    cur = mul(cur, a);
  }
  return scalarkit::is_zero(cur);
}

std::vector<Vector> CommutativeAlgebra::product(const std::vector<Vector>& i, const std::vector<Vector>& k) const {
  std::vector<Vector> gens;
  for (const auto& x : i)
    for (const auto& y : k) gens.push_back(mul(x, y));
  return span_of(base_, dim(), gens);
}

std::vector<Vector> radical(const CommutativeAlgebra& a) {
  const Domain& d = a.base();
  const std::size_t n = a.dim();
  if (n == 0) return {};
  if (d.characteristic() == 0) {
    Matrix gram(d, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gram(i, j) = a.trace(a.table()[i][j]);
    return span_of(d, n, kernel_basis(gram).column_vectors());
  }
  // x -> x^q is linear over GF(q); x^{q^k} = 0 with q^k >= n exactly on nilpotents.
  Integer q = *d.order();
  Integer e = q;
  while (e < n) e *= q;
  std::vector<Vector> images;
  for (std::size_t j = 0; j < n; ++j) images.push_back(a.pow(a.basis_element(j), e));
  return span_of(d, n, kernel_basis(Matrix::from_columns(d, n, images)).column_vectors());
}

std::string ResidueField::to_string() const {
  if (field) return field->to_string();
  if (degree == 1) return "base";
  std::ostringstream os;
  os << "degree " << degree << " extension by " << minpoly.to_string("t");
  return os.str();
}

namespace {

// A / J presented on the complement of J spanned by standard vectors.
struct Reduced {
  CommutativeAlgebra algebra;
  std::vector<std::size_t> complement;  // indices of standard vectors
  std::vector<Vector> radical_basis;
  std::vector<Vector> solve_basis;  // complement unit vectors then radical basis

  Vector project(const Vector& v) const {
    auto c = coordinates_in(solve_basis, v);
    if (!c) fail(ErrorCode::InvalidStructure, "projection to the reduced algebra failed");
    return Vector(c->begin(), c->begin() + static_cast<std::ptrdiff_t>(complement.size()));
  }
  Vector lift(const Vector& v, std::size_t n) const {
    const Domain& d = v.empty() ? radical_basis.front().front().domain() : v.front().domain();
    Vector out = zero_vector(d, n);
    for (std::size_t i = 0; i < complement.size(); ++i) out[complement[i]] = v[i];
    return out;
  }
};

Reduced reduce(const CommutativeAlgebra& a, const std::vector<Vector>& rad) {
  Reduced r;
  const Domain& d = a.base();
  const std::size_t n = a.dim();
  r.radical_basis = rad;
  r.complement = complement_indices(d, n, rad);
  for (auto i : r.complement) r.solve_basis.push_back(unit_vector(d, n, i));
  r.solve_basis.insert(r.solve_basis.end(), rad.begin(), rad.end());
  const std::size_t m = r.complement.size();
  std::vector<std::vector<Vector>> t(m, std::vector<Vector>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      t[i][j] = r.project(a.table()[r.complement[i]][r.complement[j]]);
  r.algebra = CommutativeAlgebra(d, std::move(t), r.project(a.one()));
  return r;
}

struct Block {
  Vector idempotent;  // in the reduced algebra
  Vector generator;   // generates the block as a field
  Poly minpoly;
  std::size_t dim;
};

Vector random_element(Rng& rng, const Domain& d, std::size_t n) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rng.scalar(d, 3));
  return v;
}

// Splits a reduced (semisimple) algebra into field blocks.
std::vector<Block> split_semisimple(const CommutativeAlgebra& b, const SplitOptions& options) {
  const Domain& d = b.base();
  Rng rng(options.seed);
  std::vector<Vector> pending{b.one()};
  std::vector<Block> done;
  while (!pending.empty()) {
    Vector e = pending.back();
    pending.pop_back();
    std::vector<Vector> gens;
    for (std::size_t j = 0; j < b.dim(); ++j) gens.push_back(b.mul(e, b.basis_element(j)));
    const std::size_t dim = span_basis(d, b.dim(), gens).size();
    if (dim == 1) {
      done.push_back({e, e, Poly::linear(Scalar::one(d)), 1});
      continue;
    }
    bool progressed = false;
    // Basis elements first, so generators stay readable; then seeded random probes.
    for (unsigned attempt = 0; attempt < b.dim() + options.max_probes && !progressed; ++attempt) {
      Vector x = b.mul(e, attempt < b.dim() ? b.basis_element(attempt) : random_element(rng, d, b.dim()));
      if (is_zero(x)) continue;
      Poly mu = b.minimal_polynomial(x, e);
      Factorization f = poly_factor(mu);
      if (f.factors.size() == 1) {
        if (f.factors[0].multiplicity != 1) fail(ErrorCode::InvalidStructure, "reduced algebra has a nilpotent");
        if (static_cast<std::size_t>(mu.degree()) == dim) {
          done.push_back({e, x, mu, dim});
          progressed = true;
        }
        continue;
      }
      for (const auto& pf : f.factors) {
        if (pf.multiplicity != 1) fail(ErrorCode::InvalidStructure, "reduced algebra has a nilpotent");
        Poly rest = mu / pf.factor;
        Poly eps = (rest * inverse_mod(rest, pf.factor)) % mu;
        pending.push_back(b.evaluate(eps, x, e));
      }
      progressed = true;
    }
    if (!progressed) fail(ErrorCode::ProbeExhausted, "no splitting element found after " + std::to_string(options.max_probes) + " probes");
  }
  return done;
}

Vector lift_idempotent(const CommutativeAlgebra& a, Vector e) {
  for (std::size_t step = 0; step <= 2 * a.dim() + 2; ++step) {
    Vector e2 = a.mul(e, e);
    if (e2 == e) return e;
    Vector e3 = a.mul(e2, e);
    e = sub(scale(Scalar(a.base(), 3L), e2), scale(Scalar(a.base(), 2L), e3));
  }
  fail(ErrorCode::InvalidStructure, "idempotent lifting did not converge");
}

unsigned nilpotency_index(const CommutativeAlgebra& a, const std::vector<Vector>& j) {
  unsigned index = 1;
  std::vector<Vector> power = j;
  while (!power.empty()) {
    power = a.product(power, j);
    ++index;
    if (index > a.dim() + 2) fail(ErrorCode::InvalidStructure, "radical is not nilpotent");
  }
  return index;
}

}  // namespace

std::vector<LocalFactor> local_decomposition(const CommutativeAlgebra& a, const SplitOptions& options) {
  const Domain& d = a.base();
  const std::size_t n = a.dim();
  if (n == 0) return {};
  auto rad = radical(a);
  Reduced red = reduce(a, rad);
  auto blocks = split_semisimple(red.algebra, options);
  std::vector<LocalFactor> out;
  Vector remaining = a.one();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    Vector e;
    if (i + 1 == blocks.size()) {
      e = remaining;
    } else {
      e = lift_idempotent(a, a.mul(remaining, red.lift(blocks[i].idempotent, n)));
    }
    remaining = sub(remaining, e);
    LocalFactor lf;
    lf.idempotent = e;
    std::vector<Vector> gens;
    for (std::size_t j = 0; j < n; ++j) gens.push_back(a.mul(e, a.basis_element(j)));
    lf.basis = span_basis(d, n, gens);
    std::vector<Vector> jg;
    for (const auto& r : rad) jg.push_back(a.mul(e, r));
    lf.maximal_ideal = span_basis(d, n, jg);
    lf.nilpotency_index = nilpotency_index(a, lf.maximal_ideal);
    lf.residue.degree = blocks[i].dim;
    lf.residue.finite = d.order().has_value();
    lf.residue.minpoly = blocks[i].minpoly;
    lf.residue.generator = a.mul(e, red.lift(blocks[i].generator, n));
    if (blocks[i].dim == 1) {
      lf.residue.field = d;
    } else {
      if (options.absolute) throw NeedsExtension(blocks[i].minpoly, "residue field of degree " + std::to_string(blocks[i].dim));
      if (d.kind() == DomainKind::Rationals || d.kind() == DomainKind::PrimeField) {
        std::vector<Rational> coeffs;
        for (const auto& c : blocks[i].minpoly.coefficients()) coeffs.push_back(c.value());
        lf.residue.field = Domain::extension(d, coeffs);
      }
    }
    out.push_back(std::move(lf));
  }
  std::sort(out.begin(), out.end(), [](const LocalFactor& x, const LocalFactor& y) {
    return std::lexicographical_compare(y.idempotent.begin(), y.idempotent.end(), x.idempotent.begin(),
                                        x.idempotent.end());
  });
  return out;
}

JSeriesReport j_series(const CommutativeAlgebra& a, const LocalFactor& lf) {
  JSeriesReport r;
  std::vector<std::size_t> dims{lf.basis.size()};
  std::vector<Vector> power = lf.maximal_ideal;
  dims.push_back(power.size());
  while (!power.empty()) {
    power = a.product(power, lf.maximal_ideal);
    dims.push_back(power.size());
  }
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
    std::size_t layer = (dims[i] - dims[i + 1]) / lf.residue.degree;
    r.layer_dims.push_back(layer);
    r.r_k += layer;
  }
  return r;
}

std::size_t r_k_module(const CommutativeAlgebra& a, const LocalFactor& lf, const std::vector<Matrix>& action,
                       std::size_t module_dim) {
  const Domain& d = a.base();
  if (action.size() != lf.basis.size())
    fail(ErrorCode::ActionNotWellFormed, "one matrix per factor basis element required");
  for (const auto& m : action)
    if (m.rows() != module_dim || m.cols() != module_dim || m.domain() != d)
      fail(ErrorCode::ActionNotWellFormed, "action matrix has the wrong shape or domain");
  if (module_dim == 0) return 0;
  auto rho = [&](const Vector& x) {
    auto c = coordinates_in(lf.basis, x);
    if (!c) fail(ErrorCode::ActionNotWellFormed, "element outside the factor");
    Matrix m(d, module_dim, module_dim);
    for (std::size_t i = 0; i < module_dim; ++i)
      for (std::size_t j = 0; j < module_dim; ++j) m(i, j) = Scalar::zero(d);
    for (std::size_t t = 0; t < c->size(); ++t) m = m + action[t] * (*c)[t];
    return m;
  };
  if (rho(lf.idempotent) != Matrix::identity(d, module_dim))
    fail(ErrorCode::ActionNotWellFormed, "the factor unit does not act as the identity");
  for (std::size_t s = 0; s < lf.basis.size(); ++s)
    for (std::size_t t = 0; t < lf.basis.size(); ++t)
      if (action[s] * action[t] != rho(a.mul(lf.basis[s], lf.basis[t])))
        fail(ErrorCode::ActionNotWellFormed,
             "action is not multiplicative on basis pair " + std::to_string(s) + ", " + std::to_string(t));
  std::vector<Matrix> jm;
  for (const auto& j : lf.maximal_ideal) jm.push_back(rho(j));
  std::vector<Vector> layer;
  for (std::size_t i = 0; i < module_dim; ++i) layer.push_back(unit_vector(d, module_dim, i));
  std::size_t total = 0;
  while (!layer.empty()) {
    std::vector<Vector> next;
    for (const auto& m : jm)
      for (const auto& v : layer) next.push_back(m * v);
    next = span_basis(d, module_dim, next);
    if (next.size() == layer.size()) fail(ErrorCode::ActionNotWellFormed, "maximal ideal does not act nilpotently");
    total += (layer.size() - next.size()) / lf.residue.degree;
    layer = std::move(next);
  }
  return total;
}

Representatives field_of_representatives(const CommutativeAlgebra& a, const LocalFactor& lf) {
  Representatives rep;
  const Domain& d = a.base();
  const Vector& e = lf.idempotent;
  rep.minpoly = lf.residue.minpoly;
  if (lf.residue.degree == 1) {
    rep.basis = {e};
    rep.lifted_generator = e;
    return rep;
  }
  const Poly& mu = lf.residue.minpoly;
  Poly dmu = mu.derivative();
  Vector s = lf.residue.generator;
  for (unsigned step = 0; step <= lf.nilpotency_index + 1; ++step) {
    Vector value = a.evaluate(mu, s, e);
    if (is_zero(value)) break;
    auto inv = a.inverse_in(a.evaluate(dmu, s, e), e);
    if (!inv) fail(ErrorCode::NotEquicharacteristic, "derivative of the residue polynomial is not a unit");
    s = sub(s, a.mul(value, *inv));
    ++rep.newton_steps;
  }
  if (!is_zero(a.evaluate(mu, s, e))) fail(ErrorCode::InvalidStructure, "Newton lifting did not converge");
  rep.lifted_generator = s;
  Vector cur = e;
  for (std::size_t k = 0; k < lf.residue.degree; ++k) {
    rep.basis.push_back(cur);
    cur = a.mul(cur, s);
  }
  (void)d;
  return rep;
}

std::vector<Rational> Representatives::residue_coordinates(const CommutativeAlgebra& a, const LocalFactor& lf,
                                                           const Vector& x) const {
  std::vector<Vector> cols = basis;
  cols.insert(cols.end(), lf.maximal_ideal.begin(), lf.maximal_ideal.end());
  auto c = coordinates_in(cols, a.mul(lf.idempotent, x));
  if (!c) fail(ErrorCode::InvalidStructure, "element outside the factor");
  std::vector<Rational> out;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (a.base().kind() == DomainKind::Extension) fail(ErrorCode::UnsupportedDomain, "residue coordinates over an extension base");
    out.push_back((*c)[k].value());
  }
  return out;
}

bool is_connected(const CommutativeAlgebra& a, const Vector& e) {
  const Domain& d = a.base();
  const std::size_t n = a.dim();
  std::vector<Vector> gens;
  for (std::size_t j = 0; j < n; ++j) gens.push_back(a.mul(e, a.basis_element(j)));
  auto block = span_basis(d, n, gens);
  std::vector<Vector> j;
  for (const auto& r : radical(a)) j.push_back(a.mul(e, r));
  j = span_basis(d, n, j);
  const std::size_t residue_dim = block.size() - j.size();
  if (residue_dim <= 1) return residue_dim == 1;
  if (d.order()) {
    // Fixed points of Frobenius modulo J form GF(q)^r; r = 1 exactly when connected.
    Integer q = *d.order();
    std::vector<Vector> cols;
    for (const auto& b : block) cols.push_back(sub(a.pow(b, q), b));
    // x in block with x^q - x in J: solve in block coordinates
    std::vector<Vector> sys;
    for (const auto& c : cols) sys.push_back(c);
    for (const auto& v : j) sys.push_back(v);
    Matrix m = Matrix::from_columns(d, n, sys);
    Matrix k = kernel_basis(m);
    std::vector<Vector> fixed;
    for (std::size_t c = 0; c < k.cols(); ++c) {
      Vector x = zero_vector(d, n);
      for (std::size_t i = 0; i < block.size(); ++i) x = add(x, scale(k(i, c), block[i]));
      fixed.push_back(x);
    }
    fixed.insert(fixed.end(), j.begin(), j.end());
    return span_basis(d, n, fixed).size() - j.size() == 1;
  }
  // Characteristic 0: connected iff the residue algebra is a field, probed by a generic element.
  Reduced red = reduce(a, radical(a));
  Vector eb = red.project(e);
  Rng rng(0xc0ffee);
  for (int attempt = 0; attempt < 32; ++attempt) {
    Vector x = red.algebra.mul(eb, random_element(rng, d, red.algebra.dim()));
    Poly mu = red.algebra.minimal_polynomial(x, eb);
    auto f = poly_factor(mu);
    if (f.factors.size() > 1) return false;
    if (static_cast<std::size_t>(mu.degree()) == residue_dim) return true;
  }
  fail(ErrorCode::ProbeExhausted, "connectedness probe inconclusive");
}

}  // namespace scalarkit::artinian
