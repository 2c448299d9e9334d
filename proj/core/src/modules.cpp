#include "scalarkit/modules.hpp"

#include <algorithm>
#include <sstream>

namespace scalarkit::modules {

Summand Summand::cyclic(const Integer& m) {
  if (m < 2) fail(ErrorCode::InvalidStructure, "cyclic summand needs modulus >= 2, got " + scalarkit::to_string(m));
  return {SummandKind::Cyclic, m, {}};
}

Summand Summand::field_line(const Domain& k) {
  if (!k.valid() || !k.is_field()) fail(ErrorCode::NonFieldDomain, "field line over a non-field");
  return {SummandKind::FieldLine, 0, k};
}

Domain Summand::coordinate_domain() const {
  switch (kind) {
    case SummandKind::RationalLine: return Domain::rationals();
    case SummandKind::FreeIntLine: return Domain::integers();
    case SummandKind::Cyclic:
      return is_probable_prime(modulus) ? Domain::prime_field(modulus) : Domain::residues(modulus);
    case SummandKind::FieldLine: return field;
  }
  return Domain::rationals();
}

bool Summand::divisible() const {
  switch (kind) {
    case SummandKind::RationalLine: return true;
    case SummandKind::FieldLine: return field.characteristic() == 0;
    default: return false;
  }
}

bool Summand::bounded() const {
  switch (kind) {
    case SummandKind::Cyclic: return true;
    case SummandKind::FieldLine: return field.characteristic() != 0;
    default: return false;
  }
}

std::string Summand::to_string() const {
  switch (kind) {
    case SummandKind::RationalLine: return "Q";
    case SummandKind::FreeIntLine: return "Z";
    case SummandKind::Cyclic: return "Z/" + scalarkit::to_string(modulus);
    case SummandKind::FieldLine: return field.to_string();
  }
  return "?";
}

bool Summand::operator==(const Summand& o) const {
  if (kind != o.kind) return false;
  if (kind == SummandKind::Cyclic) return modulus == o.modulus;
  if (kind == SummandKind::FieldLine) return field == o.field;
  return true;
}

ModuleDesc::ModuleDesc(std::vector<Summand> summands) : summands_(std::move(summands)) {
  if (summands_.empty()) return;
  Domain d = summands_.front().coordinate_domain();
  if (!d.is_field()) return;
  for (const auto& s : summands_)
    if (s.coordinate_domain() != d) return;
  field_ = d;
}

ModuleDesc ModuleDesc::vector_space(const Domain& field, std::size_t dim) {
  if (!field.is_field()) fail(ErrorCode::NonFieldDomain, "vector space over " + field.to_string());
  Summand s;
  switch (field.kind()) {
    case DomainKind::Rationals: s = Summand::rational_line(); break;
    case DomainKind::PrimeField: s = Summand::cyclic(field.modulus()); break;
    default: s = Summand::field_line(field); break;
  }
  ModuleDesc m(std::vector<Summand>(dim, s));
  m.field_ = field;
  return m;
}

ModuleDesc ModuleDesc::free_integer(std::size_t rank) {
  return ModuleDesc(std::vector<Summand>(rank, Summand::free_int_line()));
}

bool ModuleDesc::is_integer_module() const {
  if (field_) return false;
  for (const auto& s : summands_)
    if (s.kind != SummandKind::FreeIntLine && s.kind != SummandKind::Cyclic) return false;
  return true;
}

std::vector<std::size_t> ModuleDesc::divisible_part() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (summands_[i].divisible()) out.push_back(i);
  return out;
}

std::vector<std::size_t> ModuleDesc::bounded_part() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (summands_[i].bounded()) out.push_back(i);
  return out;
}

std::vector<std::size_t> ModuleDesc::free_part() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (summands_[i].kind == SummandKind::FreeIntLine) out.push_back(i);
  return out;
}

Vector ModuleDesc::zero() const {
  Vector v;
  v.reserve(size());
  for (const auto& s : summands_) v.push_back(Scalar::zero(s.coordinate_domain()));
  return v;
}

Vector ModuleDesc::basis_element(std::size_t i) const {
  Vector v = zero();
  v.at(i) = Scalar::one(summands_[i].coordinate_domain());
  return v;
}

Vector ModuleDesc::element(const std::vector<Rational>& values) const {
  if (values.size() != size())
    fail(ErrorCode::DimensionMismatch, "expected " + std::to_string(size()) + " coordinates");
  Vector v;
  for (std::size_t i = 0; i < size(); ++i) v.emplace_back(summands_[i].coordinate_domain(), values[i]);
  return v;
}

bool ModuleDesc::contains_shape(const Vector& v) const {
  if (v.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (v[i].domain() != summands_[i].coordinate_domain()) return false;
  return true;
}

void ModuleDesc::check(const Vector& v) const {
  if (!contains_shape(v)) fail(ErrorCode::ElementNotInModule, scalarkit::to_string(v) + " is not an element of " + to_string());
}

std::optional<ModuleDesc> ModuleDesc::integer_view() const {
  for (const auto& s : summands_)
    if (s.kind != SummandKind::FreeIntLine && s.kind != SummandKind::Cyclic) return std::nullopt;
  ModuleDesc out = *this;
  out.field_.reset();
  return out;
}

ModuleDesc ModuleDesc::restrict(const std::vector<std::size_t>& indices) const {
  std::vector<Summand> s;
  for (auto i : indices) s.push_back(summands_.at(i));
  ModuleDesc out(std::move(s));
  if (field_) out.field_ = field_;
  return out;
}

ModuleDesc ModuleDesc::operator+(const ModuleDesc& other) const {
  std::vector<Summand> s = summands_;
  s.insert(s.end(), other.summands_.begin(), other.summands_.end());
  ModuleDesc out(std::move(s));
  if (field_ && other.field_ && *field_ == *other.field_) out.field_ = field_;
  return out;
}

std::string ModuleDesc::to_string() const {
  if (summands_.empty()) return "0";
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < size()) {
    std::size_t j = i;
    while (j < size() && summands_[j] == summands_[i]) ++j;
    if (!first) os << " + ";
    first = false;
    os << summands_[i].to_string();
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

namespace {

const Domain& zz() {
  static const Domain z = Domain::integers();
  return z;
}

Integer as_integer(const Scalar& s) {
  const Rational& v = s.value();
  if (v.get_den() != 1) fail(ErrorCode::ElementNotInModule, "non-integral coordinate " + s.to_string());
  return v.get_num();
}

Vector lift(const Vector& v) {
  Vector out;
  out.reserve(v.size());
  for (const auto& s : v) out.emplace_back(zz(), Rational(as_integer(s)));
  return out;
}

Vector push(const ModuleDesc& m, const Vector& lifted) {
  Vector out;
  out.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out.emplace_back(m[i].coordinate_domain(), lifted[i].value());
  return out;
}

// Relation columns m_k e_k for the cyclic summands.
std::vector<Vector> relations(const ModuleDesc& m) {
  std::vector<Vector> out;
  for (std::size_t k = 0; k < m.size(); ++k)
    if (m[k].kind == SummandKind::Cyclic) out.push_back(scale(Scalar(zz(), Rational(m[k].modulus)), unit_vector(zz(), m.size(), k)));
  return out;
}

void require_supported(const ModuleDesc& m, const char* op) {
  if (m.field() || m.is_integer_module()) return;
  fail(ErrorCode::UnsupportedDomain, std::string(op) + " on mixed module " + m.to_string());
}

Integer int_of(const Matrix& m, std::size_t r, std::size_t c) { return m(r, c).value().get_num(); }

Matrix unimodular_inverse(const Matrix& u) {
  auto inv = inverse(Matrix::from_values(Domain::rationals(), u.rows(), u.cols(), [&] {
    std::vector<Rational> vals;
    for (const auto& e : u.entries()) vals.push_back(e.value());
    return vals;
  }()));
  if (!inv) fail(ErrorCode::NotInvertible, "singular transform");
  std::vector<Rational> vals;
  for (const auto& e : inv->entries()) vals.push_back(e.value());
  return Matrix::from_values(zz(), u.rows(), u.cols(), vals);
}

Submodule integer_span(const ModuleDesc& ambient, const std::vector<Vector>& gens) {
  const std::size_t n = ambient.size();
  std::vector<Vector> g;
  for (const auto& v : gens) g.push_back(lift(v));
  const std::size_t k = g.size();
  if (k == 0) return {ModuleDesc{}, {}};
  std::vector<Vector> cols = g;
  for (auto& r : relations(ambient)) cols.push_back(r);
  Matrix big = Matrix::from_columns(zz(), n, cols);
  Matrix ker = integer_kernel(big);
  // Relations among the generators modulo the ambient relations.
  Matrix rel(zz(), k, ker.cols());
  for (std::size_t c = 0; c < ker.cols(); ++c)
    for (std::size_t r = 0; r < k; ++r) rel(r, c) = ker(r, c);
  std::vector<Integer> d(k, 0);
  Matrix winv = Matrix::identity(zz(), k);
  if (rel.cols() > 0) {
    SmithResult snf = smith_normal_form(rel);
    for (std::size_t i = 0; i < std::min(k, rel.cols()); ++i) d[i] = int_of(snf.D, i, i);
    winv = unimodular_inverse(snf.U);
  }
  Submodule out;
  std::vector<Summand> summands;
  std::vector<Vector> basis;
  // Cyclic factors first (ascending by divisibility), then free ones.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < k; ++i) {
      if (d[i] == 1) continue;
      bool is_free = d[i] == 0;
      if ((pass == 0) == is_free) continue;
      Vector w = zero_vector(zz(), n);
      for (std::size_t j = 0; j < k; ++j) w = add(w, scale(winv(j, i), g[j]));
      summands.push_back(is_free ? Summand::free_int_line() : Summand::cyclic(d[i]));
      basis.push_back(push(ambient, w));
    }
  }
  out.desc = ModuleDesc(std::move(summands));
  out.basis = std::move(basis);
  return out;
}

std::optional<Vector> integer_coordinates(const ModuleDesc& ambient, const Submodule& sub, const Vector& y) {
  const std::size_t n = ambient.size();
  std::vector<Vector> cols;
  for (const auto& b : sub.basis) cols.push_back(lift(b));
  auto rels = relations(ambient);
  cols.insert(cols.end(), rels.begin(), rels.end());
  Vector target = lift(y);
  if (cols.empty()) {
    if (is_zero(target)) return Vector{};
    return std::nullopt;
  }
  auto sol = integer_solve(Matrix::from_columns(zz(), n, cols), target);
  if (!sol) return std::nullopt;
  Vector out;
  for (std::size_t i = 0; i < sub.size(); ++i) out.emplace_back(sub.desc[i].coordinate_domain(), (*sol)[i].value());
  return out;
}

}  // namespace

Submodule span(const ModuleDesc& ambient, const std::vector<Vector>& generators) {
  require_supported(ambient, "span");
  for (const auto& g : generators) ambient.check(g);
  if (ambient.field()) {
    const Domain& f = *ambient.field();
    Submodule out;
    out.basis = span_basis(f, ambient.size(), generators);
    out.desc = ModuleDesc::vector_space(f, out.basis.size());
    return out;
  }
  return integer_span(ambient, generators);
}

Submodule kernel(const ModuleDesc& domain, const ModuleDesc& codomain, const std::vector<Vector>& images) {
  if (images.size() != domain.size())
    fail(ErrorCode::DimensionMismatch, "one image per basis element required");
  for (const auto& v : images) codomain.check(v);
  require_supported(domain, "kernel");
  require_supported(codomain, "kernel");
  if (domain.field() && codomain.field()) {
    if (*domain.field() != *codomain.field()) fail(ErrorCode::DomainMismatch, "kernel across different fields");
    const Domain& f = *domain.field();
    if (domain.empty()) return {ModuleDesc::vector_space(f, 0), {}};
    if (codomain.empty()) {
      std::vector<Vector> all;
      for (std::size_t i = 0; i < domain.size(); ++i) all.push_back(domain.basis_element(i));
      return span(domain, all);
    }
    Matrix m = Matrix::from_columns(f, codomain.size(), images);
    return span(domain, kernel_basis(m).column_vectors());
  }
  // Integer route: any field space involved must be a GF(p)^n, which is a Z-module too.
  auto as_integer_desc = [](const ModuleDesc& m) {
    auto v = m.integer_view();
    if (!v) fail(ErrorCode::UnsupportedDomain, "kernel between " + m.to_string() + " modules");
    return *v;
  };
  ModuleDesc dz = as_integer_desc(domain);
  ModuleDesc cz = as_integer_desc(codomain);
  const std::size_t n = dz.size();
  const std::size_t m = cz.size();
  std::vector<Vector> cols;
  for (const auto& v : images) cols.push_back(lift(v));
  auto rels_n = relations(cz);
  // Well-definedness: each relation of the domain must map into the codomain relations.
  for (std::size_t i = 0; i < n; ++i) {
    if (dz[i].kind != SummandKind::Cyclic) continue;
    Vector t = scale(Scalar(zz(), Rational(dz[i].modulus)), cols[i]);
    if (m > 0 && !is_zero(push(cz, t)))
      fail(ErrorCode::InvalidStructure, "homomorphism not well defined on " + dz[i].to_string());
  }
  std::vector<Vector> gens;
  if (m == 0) {
    for (std::size_t i = 0; i < n; ++i) gens.push_back(dz.basis_element(i));
  } else if (n > 0) {
    cols.insert(cols.end(), rels_n.begin(), rels_n.end());
    Matrix ker = integer_kernel(Matrix::from_columns(zz(), m, cols));
    for (std::size_t c = 0; c < ker.cols(); ++c) {
      Vector x;
      for (std::size_t r = 0; r < n; ++r) x.push_back(ker(r, c));
      gens.push_back(push(dz, x));
    }
  }
  return span(domain, gens);
}

std::optional<Vector> coordinates(const ModuleDesc& ambient, const Submodule& sub, const Vector& y) {
  require_supported(ambient, "coordinates");
  ambient.check(y);
  if (ambient.field()) return coordinates_in(sub.basis, y);
  return integer_coordinates(ambient, sub, y);
}

bool contains(const ModuleDesc& ambient, const Submodule& sub, const Vector& y) {
  return coordinates(ambient, sub, y).has_value();
}

bool is_contained(const ModuleDesc& ambient, const Submodule& inner, const Submodule& outer) {
  for (const auto& b : inner.basis)
    if (!contains(ambient, outer, b)) return false;
  return true;
}

bool same_submodule(const ModuleDesc& ambient, const Submodule& a, const Submodule& b) {
  return is_contained(ambient, a, b) && is_contained(ambient, b, a);
}

Vector embed(const ModuleDesc& ambient, const Submodule& sub, const Vector& coords) {
  if (coords.size() != sub.size()) fail(ErrorCode::DimensionMismatch, "coordinate count mismatch");
  Vector out = ambient.zero();
  for (std::size_t i = 0; i < sub.size(); ++i) {
    if (ambient.field()) {
      out = add(out, scale(coords[i], sub.basis[i]));
    } else {
      Integer c = as_integer(coords[i]);
      Vector term;
      for (const auto& s : sub.basis[i]) term.push_back(s * Scalar(s.domain(), Rational(c)));
      out = add(out, term);
    }
  }
  return out;
}

Submodule intersection(const ModuleDesc& ambient, const Submodule& a, const Submodule& b) {
  require_supported(ambient, "intersection");
  if (a.is_zero() || b.is_zero()) return span(ambient, {});
  const std::size_t n = ambient.size();
  std::vector<Vector> cols;
  std::vector<Vector> gens;
  if (ambient.field()) {
    const Domain& f = *ambient.field();
    for (const auto& v : a.basis) cols.push_back(v);
    for (const auto& v : b.basis) cols.push_back(scale(Scalar(f, -1L), v));
    Matrix ker = kernel_basis(Matrix::from_columns(f, n, cols));
    for (std::size_t c = 0; c < ker.cols(); ++c) {
      Vector x = ambient.zero();
      for (std::size_t i = 0; i < a.size(); ++i) x = add(x, scale(ker(i, c), a.basis[i]));
      gens.push_back(x);
    }
    return span(ambient, gens);
  }
  for (const auto& v : a.basis) cols.push_back(lift(v));
  for (const auto& v : b.basis) cols.push_back(scale(Scalar(zz(), -1L), lift(v)));
  for (auto& r : relations(ambient)) cols.push_back(r);
  Matrix ker = integer_kernel(Matrix::from_columns(zz(), n, cols));
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    Vector x = zero_vector(zz(), n);
    for (std::size_t i = 0; i < a.size(); ++i) x = add(x, scale(ker(i, c), lift(a.basis[i])));
    gens.push_back(push(ambient, x));
  }
  return span(ambient, gens);
}

std::optional<Submodule> split_complement(const std::vector<Vector>& generators, const ModuleDesc& ambient) {
  for (const auto& g : generators) ambient.check(g);
  if (ambient.field()) {
    const Domain& f = *ambient.field();
    auto basis = span_basis(f, ambient.size(), generators);
    Submodule out;
    for (auto i : complement_indices(f, ambient.size(), basis)) out.basis.push_back(ambient.basis_element(i));
    out.desc = ModuleDesc::vector_space(f, out.basis.size());
    return out;
  }
  if (!ambient.is_integer_module())
    fail(ErrorCode::UnsupportedDomain, "split_complement needs a f.g. Z-module, got " + ambient.to_string());
  const std::size_t n = ambient.size();
  std::vector<Vector> g;
  for (const auto& v : generators) g.push_back(lift(v));
  auto rels = relations(ambient);
  std::vector<Vector> cols = rels;
  cols.insert(cols.end(), g.begin(), g.end());
  std::vector<Integer> d(n, 0);
  Matrix xinv = Matrix::identity(zz(), n);
  if (!cols.empty() && n > 0) {
    SmithResult snf = smith_normal_form(Matrix::from_columns(zz(), n, cols));
    for (std::size_t i = 0; i < std::min(n, cols.size()); ++i) d[i] = int_of(snf.D, i, i);
    xinv = unimodular_inverse(snf.U);
  }
  std::vector<Summand> summands;
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] == 1) continue;
    Vector x = xinv.column(i);
    if (d[i] != 0) {
      // Need s in S with d_i (x + s) a relation of the ambient module.
      Scalar di(zz(), Rational(d[i]));
      std::vector<Vector> sys;
      for (const auto& v : g) sys.push_back(scale(di, v));
      sys.insert(sys.end(), rels.begin(), rels.end());
      Vector target = scale(Scalar(zz(), Rational(-d[i])), x);
      if (sys.empty()) {
        if (!is_zero(target)) return std::nullopt;
      } else {
        auto sol = integer_solve(Matrix::from_columns(zz(), n, sys), target);
        if (!sol) return std::nullopt;
        for (std::size_t j = 0; j < g.size(); ++j) x = add(x, scale((*sol)[j], g[j]));
      }
    }
    summands.push_back(d[i] == 0 ? Summand::free_int_line() : Summand::cyclic(d[i]));
    basis.push_back(push(ambient, x));
  }
  return Submodule{ModuleDesc(std::move(summands)), std::move(basis)};
}

Vector DivisibleBoundedSplit::project_divisible(const Vector& v) const {
  Vector out;
  for (auto i : divisible_indices) out.push_back(v.at(i));
  return out;
}

Vector DivisibleBoundedSplit::project_bounded(const Vector& v) const {
  Vector out;
  for (auto i : bounded_indices) out.push_back(v.at(i));
  return out;
}

Vector DivisibleBoundedSplit::reassemble(const Vector& dv, const Vector& bv) const {
  Vector out(divisible_indices.size() + bounded_indices.size());
  for (std::size_t i = 0; i < divisible_indices.size(); ++i) out[divisible_indices[i]] = dv.at(i);
  for (std::size_t i = 0; i < bounded_indices.size(); ++i) out[bounded_indices[i]] = bv.at(i);
  return out;
}

DivisibleBoundedSplit divisible_bounded_split(const ModuleDesc& m) {
  if (!m.free_part().empty())
    fail(ErrorCode::NotOmegaStableShape, m.to_string() + " has a free integer summand");
  DivisibleBoundedSplit out;
  out.divisible_indices = m.divisible_part();
  out.bounded_indices = m.bounded_part();
  out.divisible = m.restrict(out.divisible_indices);
  out.bounded = m.restrict(out.bounded_indices);
  return out;
}

bool is_divisible(const ModuleDesc& m) { return m.divisible_part().size() == m.size(); }

bool is_bounded(const ModuleDesc& m) { return m.bounded_part().size() == m.size(); }

Integer exponent(const ModuleDesc& m) {
  Integer e = 1;
  for (const auto& s : m.summands()) {
    if (!s.bounded()) return 0;
    Integer o = s.kind == SummandKind::Cyclic ? s.modulus : s.field.characteristic();
    mpz_lcm(e.get_mpz_t(), e.get_mpz_t(), o.get_mpz_t());
  }
  return e;
}

ModuleDesc torsion_part(const ModuleDesc& m) { return m.restrict(m.bounded_part()); }

}  // namespace scalarkit::modules
