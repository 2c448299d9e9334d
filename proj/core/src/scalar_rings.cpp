#include "scalarkit/scalar_rings.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace scalarkit::scalar_rings {

namespace {

const Domain& require_field_map(const BilinearMap& f, const char* op) {
  const auto& m = f.domain();
  const auto& n = f.codomain();
  if (!m.field() || !n.field()) {
    if (m.is_integer_module() || n.is_integer_module())
      fail(ErrorCode::UnsupportedDomain, std::string(op) + " over Z-modules is not supported");
    fail(ErrorCode::NonFieldDomain, std::string(op) + " needs a vector space domain");
  }
  if (*m.field() != *n.field()) fail(ErrorCode::DomainMismatch, std::string(op) + ": domain and codomain fields differ");
  return *m.field();
}

Matrix from_flat(const Domain& d, std::size_t n, const Vector& v) {
  Matrix m(d, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = v[r * n + c];
  return m;
}

Matrix combination(const Domain& d, std::size_t n, const std::vector<Matrix>& basis, const Vector& coords) {
  Matrix m(d, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = Scalar::zero(d);
  for (std::size_t t = 0; t < basis.size(); ++t)
    if (!coords[t].is_zero()) m = m + basis[t] * coords[t];
  return m;
}

// Kernel of a linear system given as rows over `unknowns` variables.
std::vector<Vector> solve_rows(const Domain& d, std::size_t unknowns, const std::vector<Vector>& rows) {
  if (unknowns == 0) return {};
  if (rows.empty()) {
    std::vector<Vector> all;
    for (std::size_t i = 0; i < unknowns; ++i) all.push_back(unit_vector(d, unknowns, i));
    return all;
  }
  return kernel_basis(Matrix::from_rows(d, unknowns, rows)).column_vectors();
}

}  // namespace

bool EndoAlgebra::contains(const Matrix& m) const { return coordinates(m).has_value(); }

std::optional<Vector> EndoAlgebra::coordinates(const Matrix& m) const {
  std::vector<Vector> flat;
  for (const auto& b : basis) flat.push_back(b.entries());
  return coordinates_in(flat, m.entries());
}

Matrix EndoAlgebra::element(const Vector& coords) const { return combination(field, ambient_dim, basis, coords); }

bool EndoAlgebra::is_commutative() const {
  for (const auto& a : basis)
    for (const auto& b : basis)
      if (a * b != b * a) return false;
  return true;
}

EndoAlgebra make_endo_algebra(const Domain& field, std::size_t n, const std::vector<Matrix>& spanning) {
  EndoAlgebra out;
  out.field = field;
  out.ambient_dim = n;
  std::vector<Vector> flat;
  for (const auto& m : spanning) flat.push_back(m.entries());
  for (const auto& v : span_basis(field, n * n, flat)) out.basis.push_back(from_flat(field, n, v));
  out.unital = out.contains(Matrix::identity(field, n));
  out.closed = true;
  for (const auto& a : out.basis)
    for (const auto& b : out.basis)
      if (!out.contains(a * b)) out.closed = false;
  return out;
}

EndoAlgebra symmetric_endos(const BilinearMap& f) {
  const Domain& d = require_field_map(f, "symmetric_endos");
  const std::size_t n = f.dim();
  const std::size_t m = f.codomain().size();
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t c = 0; c < m; ++c) {
        Vector row = zero_vector(d, n * n);
        // f(A b_i, b_j) - f(b_i, A b_j), with A b_i = sum_k A(k, i) b_k
        for (std::size_t k = 0; k < n; ++k) {
          row[k * n + i] += f.at(k, j)[c];
          row[k * n + j] -= f.at(i, k)[c];
        }
        if (!is_zero(row)) rows.push_back(row);
      }
  std::vector<Matrix> mats;
  for (const auto& v : solve_rows(d, n * n, rows)) mats.push_back(from_flat(d, n, v));
  return make_endo_algebra(d, n, mats);
}

EndoAlgebra z_center(const EndoAlgebra& sym) {
  const Domain& d = sym.field;
  const std::size_t n = sym.ambient_dim;
  const std::size_t k = sym.dim();
  std::vector<Vector> rows;
  for (const auto& u : sym.basis) {
    std::vector<Matrix> comm;
    for (const auto& t : sym.basis) comm.push_back(t * u - u * t);
    for (std::size_t e = 0; e < n * n; ++e) {
      Vector row;
      for (std::size_t t = 0; t < k; ++t) row.push_back(comm[t].entries()[e]);
      if (!is_zero(row)) rows.push_back(row);
    }
  }
  std::vector<Matrix> mats;
  for (const auto& c : solve_rows(d, k, rows)) mats.push_back(combination(d, n, sym.basis, c));
  return make_endo_algebra(d, n, mats);
}

Vector ScalarRingReport::image_coordinates(const Vector& y) const {
  auto c = coordinates_in(image_basis, y);
  if (!c) fail(ErrorCode::InvalidStructure, "value outside im(f)");
  return *c;
}

Matrix ScalarRingReport::image_action(const BilinearMap& f, const Matrix& a) const {
  const Domain& d = algebra.field;
  std::vector<Vector> cols;
  for (const auto& [i, j] : image_pairs) cols.push_back(image_coordinates(f.apply(a.column(i), f.domain().basis_element(j))));
  return Matrix::from_columns(d, image_basis.size(), cols);
}

namespace {

void choose_image_basis(const BilinearMap& f, ScalarRingReport& r) {
  const Domain& d = *f.codomain().field();
  const std::size_t m = f.codomain().size();
  for (std::size_t i = 0; i < f.dim(); ++i)
    for (std::size_t j = 0; j < f.dim(); ++j) {
      if (is_zero(f.at(i, j))) continue;
      std::vector<Vector> trial = r.image_basis;
      trial.push_back(f.at(i, j));
      if (span_basis(d, m, trial).size() == trial.size()) {
        r.image_basis = std::move(trial);
        r.image_pairs.emplace_back(i, j);
      }
    }
}

std::vector<Vector> relation_kernel(const BilinearMap& f) {
  const Domain& d = *f.codomain().field();
  const std::size_t n = f.dim();
  const std::size_t m = f.codomain().size();
  if (n == 0) return {};
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cols.push_back(f.at(i, j));
  if (m == 0) return solve_rows(d, n * n, {});
  return kernel_basis(Matrix::from_columns(d, m, cols)).column_vectors();
}

// Coordinates c (over the given basis) with sum_t c_t B_t stabilizing the relation kernel.
std::vector<Vector> stabilizer_conditions(const BilinearMap& f, const std::vector<Matrix>& basis,
                                          const std::vector<Vector>& kernel) {
  const std::size_t n = f.dim();
  const std::size_t m = f.codomain().size();
  const Domain& d = *f.codomain().field();
  std::vector<Vector> rows;
  for (const auto& kappa : kernel) {
    std::vector<Vector> values;  // per basis element: sum_ij kappa_ij f(B b_i, b_j)
    for (const auto& b : basis) {
      Vector v = zero_vector(d, m);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const Scalar& k = kappa[i * n + j];
          if (k.is_zero()) continue;
          v = add(v, scale(k, f.apply(b.column(i), f.domain().basis_element(j))));
        }
      values.push_back(v);
    }
    for (std::size_t c = 0; c < m; ++c) {
      Vector row;
      for (const auto& v : values) row.push_back(v[c]);
      if (!is_zero(row)) rows.push_back(row);
    }
  }
  return rows;
}

void fill_action(const BilinearMap& f, ScalarRingReport& r) {
  r.action_on_image.clear();
  for (const auto& a : r.algebra.basis) r.action_on_image.push_back(r.image_action(f, a));
  r.bilinear_certified = certify_bilinear(f, r);
}

}  // namespace

bool certify_bilinear(const BilinearMap& f, const ScalarRingReport& report) {
  const auto& m = f.domain();
  for (std::size_t t = 0; t < report.algebra.dim(); ++t) {
    const Matrix& a = report.algebra.basis[t];
    const Matrix& rho = report.action_on_image[t];
    for (std::size_t i = 0; i < f.dim(); ++i)
      for (std::size_t j = 0; j < f.dim(); ++j) {
        Vector left = f.apply(a.column(i), m.basis_element(j));
        Vector right = f.apply(m.basis_element(i), a.column(j));
        if (left != right) return false;
        auto c = coordinates_in(report.image_basis, f.at(i, j));
        auto l = coordinates_in(report.image_basis, left);
        if (!c || !l || rho * *c != *l) return false;
      }
  }
  return true;
}

ScalarRingReport p_of_f(const BilinearMap& f) {
  const Domain& d = require_field_map(f, "p_of_f");
  if (!bilinear::is_nondegenerate(f)) fail(ErrorCode::DegenerateInput, "C(f) is nonzero; pass the foundation");
  const std::size_t n = f.dim();
  ScalarRingReport r;
  choose_image_basis(f, r);
  r.relation_kernel = relation_kernel(f);
  EndoAlgebra z = z_center(symmetric_endos(f));
  std::vector<Matrix> mats;
  for (const auto& c : solve_rows(d, z.dim(), stabilizer_conditions(f, z.basis, r.relation_kernel)))
    mats.push_back(combination(d, n, z.basis, c));
  r.algebra = make_endo_algebra(d, n, mats);
  fill_action(f, r);
  return r;
}

namespace {

constexpr std::uint64_t kEnumerationLimit = 81;
constexpr std::uint64_t kCandidateLimit = 1u << 16;

struct Enumerated {
  std::uint64_t p = 0;
  std::uint64_t size_m = 0;
  std::uint64_t size_n = 0;
  std::vector<Vector> elements;
  std::vector<std::uint32_t> product;  // product[x * size_m + y] = code of f(x, y)
  std::vector<std::uint64_t> candidates_codes;
};

Enumerated enumerate(const BilinearMap& f, const Domain& d) {
  if (d.kind() != DomainKind::PrimeField) fail(ErrorCode::UnsupportedDomain, "enumeration needs a prime field");
  auto size = bilinear::finite_size(f.domain(), kEnumerationLimit);
  if (!size) fail(ErrorCode::EnumerationTooLarge, "|M| exceeds " + std::to_string(kEnumerationLimit));
  auto nsize = bilinear::finite_size(f.codomain(), 1u << 20);
  if (!nsize) fail(ErrorCode::EnumerationTooLarge, "|N| too large to enumerate");
  Enumerated e;
  e.p = d.modulus().get_ui();
  e.size_m = *size;
  e.size_n = *nsize;
  for (std::uint64_t c = 0; c < e.size_m; ++c) e.elements.push_back(bilinear::decode(c, d, f.dim()));
  e.product.resize(e.size_m * e.size_m);
  for (std::uint64_t x = 0; x < e.size_m; ++x)
    for (std::uint64_t y = 0; y < e.size_m; ++y)
      e.product[x * e.size_m + y] = static_cast<std::uint32_t>(bilinear::encode(f.apply(e.elements[x], e.elements[y]), e.p));
  return e;
}

std::uint64_t add_codes(std::uint64_t a, std::uint64_t b, std::uint64_t p, std::uint64_t size) {
  std::uint64_t out = 0, scale = 1;
  while (scale < size) {
    out += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return out;
}

// Is the relation {(sum f(x_i, y_i), sum f(A x_i, y_i))} over `terms`-fold sums functional?
// terms == 0 means: iterate to the full subgroup.
bool relation_functional(const Enumerated& e, const Matrix& a, const BilinearMap& f, unsigned terms) {
  std::vector<std::uint64_t> image(e.size_m);
  for (std::uint64_t x = 0; x < e.size_m; ++x) image[x] = bilinear::encode(a * e.elements[x], e.p);
  std::set<std::pair<std::uint64_t, std::uint64_t>> base;
  for (std::uint64_t x = 0; x < e.size_m; ++x)
    for (std::uint64_t y = 0; y < e.size_m; ++y)
      base.emplace(e.product[x * e.size_m + y], e.product[image[x] * e.size_m + y]);
  (void)f;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> gens(base.begin(), base.end());
  std::set<std::pair<std::uint64_t, std::uint64_t>> current = base;
  for (unsigned k = 1; terms == 0 || k < terms; ++k) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> next;
    for (const auto& [u, v] : current)
      for (const auto& [g, h] : gens) next.emplace(add_codes(u, g, e.p, e.size_n), add_codes(v, h, e.p, e.size_n));
    if (next == current) break;
    current = std::move(next);
  }
  std::unordered_map<std::uint64_t, std::uint64_t> fn;
  for (const auto& [u, v] : current) {
    auto [it, inserted] = fn.emplace(u, v);
    if (!inserted && it->second != v) return false;
  }
  return true;
}

ZnDiagnostic run_diagnostic(const BilinearMap& f, unsigned terms) {
  const Domain& d = require_field_map(f, "z_n_diagnostic");
  Enumerated e = enumerate(f, d);
  EndoAlgebra z = z_center(symmetric_endos(f));
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < z.dim(); ++i) {
    count *= e.p;
    if (count > kCandidateLimit) fail(ErrorCode::EnumerationTooLarge, "Z(f) too large to enumerate");
  }
  ZnDiagnostic out;
  out.candidates = count;
  std::vector<Matrix> members;
  for (std::uint64_t c = 0; c < count; ++c) {
    Matrix a = z.element(bilinear::decode(c, d, z.dim()));
    if (relation_functional(e, a, f, terms)) {
      ++out.members;
      members.push_back(a);
    }
  }
  out.zn = make_endo_algebra(d, f.dim(), members);
  return out;
}

}  // namespace

ZnDiagnostic z_n_diagnostic(const BilinearMap& f, unsigned n) {
  if (n == 0) fail(ErrorCode::InvalidStructure, "Z_n needs n >= 1");
  return run_diagnostic(f, n);
}

ZnDiagnostic z_saturated_diagnostic(const BilinearMap& f) { return run_diagnostic(f, 0); }

artinian::CommutativeAlgebra as_commutative_algebra(const EndoAlgebra& p) {
  return artinian::CommutativeAlgebra::from_matrices(p.field, p.basis);
}

ScalarDecomposition decompose_via_scalars(const BilinearMap& f, const artinian::SplitOptions& options) {
  const Domain& d = require_field_map(f, "decompose_via_scalars");
  if (d.kind() != DomainKind::Rationals && d.kind() != DomainKind::PrimeField && d.kind() != DomainKind::Extension)
    fail(ErrorCode::UnsupportedDomain, "decompose_via_scalars over " + d.to_string());
  if (!bilinear::is_full(f)) fail(ErrorCode::DegenerateInput, "f is not full");
  ScalarDecomposition out;
  out.p = p_of_f(f);
  out.algebra = as_commutative_algebra(out.p.algebra);
  const std::size_t n = f.dim();
  const std::size_t m = f.codomain().size();
  for (auto& lf : artinian::local_decomposition(out.algebra, options)) {
    ScalarComponent comp;
    comp.idempotent = out.p.algebra.element(lf.idempotent);
    comp.domain_basis = span_basis(d, n, comp.idempotent.column_vectors());
    Matrix rho = out.p.image_action(f, comp.idempotent);
    std::vector<Vector> images;
    for (const auto& col : rho.column_vectors()) {
      Vector y = zero_vector(d, m);
      for (std::size_t t = 0; t < col.size(); ++t) y = add(y, scale(col[t], out.p.image_basis[t]));
      images.push_back(y);
    }
    comp.codomain_basis = span_basis(d, m, images);
    const std::size_t k = comp.domain_basis.size();
    std::vector<std::vector<Vector>> table(k, std::vector<Vector>(k));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        auto c = coordinates_in(comp.codomain_basis, f.apply(comp.domain_basis[a], comp.domain_basis[b]));
        if (!c) fail(ErrorCode::InvalidStructure, "component product leaves e_i im(f)");
        table[a][b] = *c;
      }
    comp.map = BilinearMap(modules::ModuleDesc::vector_space(d, k),
                           modules::ModuleDesc::vector_space(d, comp.codomain_basis.size()), std::move(table));
    comp.factor = std::move(lf);
    out.components.push_back(std::move(comp));
  }
  for (std::size_t i = 0; i < out.components.size(); ++i)
    for (std::size_t j = 0; j < out.components.size(); ++j) {
      if (i == j) continue;
      for (const auto& x : out.components[i].domain_basis)
        for (const auto& y : out.components[j].domain_basis)
          if (!is_zero(f.apply(x, y))) fail(ErrorCode::InvalidStructure, "components do not annihilate each other");
    }
  return out;
}

Vector RingScalarReport::project(const Vector& x) const {
  std::vector<Vector> basis = quotient_basis;
  basis.insert(basis.end(), annihilator.begin(), annihilator.end());
  auto c = coordinates_in(basis, x);
  if (!c) fail(ErrorCode::InvalidStructure, "projection to R/Ann(R) failed");
  return Vector(c->begin(), c->begin() + static_cast<std::ptrdiff_t>(quotient_basis.size()));
}

RingScalarReport a_of_r(const BilinearMap& mult) {
  const Domain& d = require_field_map(mult, "a_of_r");
  if (!(mult.domain() == mult.codomain())) fail(ErrorCode::InvalidStructure, "ring multiplication must map R x R -> R");
  if (mult.is_zero()) fail(ErrorCode::DegenerateInput, "zero multiplication: A(R) is undefined");
  const std::size_t n = mult.dim();
  RingScalarReport out;
  out.annihilator = bilinear::two_sided_kernel(mult).basis;
  for (auto i : complement_indices(d, n, out.annihilator)) out.quotient_basis.push_back(unit_vector(d, n, i));
  const std::size_t q = out.quotient_basis.size();
  std::vector<std::vector<Vector>> table(q, std::vector<Vector>(q));
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) table[a][b] = mult.apply(out.quotient_basis[a], out.quotient_basis[b]);
  out.induced = BilinearMap(modules::ModuleDesc::vector_space(d, q), mult.codomain(), std::move(table));
  ScalarRingReport p = p_of_f(out.induced);
  out.p_dim = p.algebra.dim();
  // eta: class of A.y must equal A applied to the class of y, for y in R^2.
  std::vector<Vector> rows;
  std::vector<std::vector<Vector>> values(p.algebra.dim());
  for (std::size_t s = 0; s < p.algebra.dim(); ++s) {
    const Matrix& a = p.algebra.basis[s];
    for (std::size_t t = 0; t < p.image_basis.size(); ++t) {
      auto [i, j] = p.image_pairs[t];
      Vector acted = out.induced.apply(a.column(i), out.induced.domain().basis_element(j));
      values[s].push_back(sub(out.project(acted), a * out.project(p.image_basis[t])));
    }
  }
  for (std::size_t t = 0; t < p.image_basis.size(); ++t)
    for (std::size_t c = 0; c < q; ++c) {
      Vector row;
      for (std::size_t s = 0; s < p.algebra.dim(); ++s) row.push_back(values[s][t][c]);
      if (!is_zero(row)) rows.push_back(row);
    }
  std::vector<Matrix> mats;
  for (const auto& c : solve_rows(d, p.algebra.dim(), rows)) mats.push_back(p.algebra.element(c));
  out.report = p;
  out.report.algebra = make_endo_algebra(d, q, mats);
  fill_action(out.induced, out.report);
  return out;
}

}  // namespace scalarkit::scalar_rings
