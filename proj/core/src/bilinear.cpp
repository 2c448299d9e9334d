#include "scalarkit/bilinear.hpp"

#include <algorithm>
#include <unordered_set>

namespace scalarkit::bilinear {

using modules::SummandKind;

Scalar act(const Scalar& c, const Scalar& n) {
  if (c.domain() == n.domain()) return c * n;
  if (c.domain().kind() == DomainKind::Extension) fail(ErrorCode::DomainMismatch, "extension scalar acting on " + n.domain().to_string());
  return Scalar(n.domain(), c.value()) * n;
}

Vector act(const Scalar& c, const Vector& v) {
  Vector out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(act(c, s));
  return out;
}

namespace {

Integer summand_order(const modules::Summand& s) {
  if (s.kind == SummandKind::Cyclic) return s.modulus;
  if (s.kind == SummandKind::FieldLine && s.field.characteristic() != 0) return s.field.characteristic();
  return 0;
}

bool killed_by(const Vector& v, const Integer& m) {
  for (const auto& s : v)
    if (!act(Scalar(Domain::integers(), Rational(m)), s).is_zero()) return false;
  return true;
}

}  // namespace

BilinearMap::BilinearMap(ModuleDesc domain, ModuleDesc codomain, std::vector<std::vector<Vector>> table)
    : m_(std::move(domain)), n_(std::move(codomain)), table_(std::move(table)) {
  const std::size_t n = m_.size();
  if (table_.size() != n) fail(ErrorCode::DimensionMismatch, "structure tensor needs " + std::to_string(n) + " rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (table_[i].size() != n) fail(ErrorCode::DimensionMismatch, "structure tensor row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < n; ++j) n_.check(table_[i][j]);
  }
  auto nd = n_.divisible_part();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Vector& v = table_[i][j];
      const std::string where = "f(b" + std::to_string(i) + ",b" + std::to_string(j) + ")";
      bool di = m_[i].divisible(), dj = m_[j].divisible();
      bool bi = m_[i].bounded(), bj = m_[j].bounded();
      if (((di && bj) || (bi && dj)) && !scalarkit::is_zero(v))
        fail(ErrorCode::InvalidStructure, where + " pairs a divisible and a bounded summand but is nonzero");
      for (auto o : {summand_order(m_[i]), summand_order(m_[j])})
        if (o != 0 && !killed_by(v, o))
          fail(ErrorCode::InvalidStructure, where + " is not killed by " + to_string(o));
      if (di && dj) {
        for (std::size_t k = 0; k < n_.size(); ++k)
          if (n_[k].bounded() && !v[k].is_zero())
            fail(ErrorCode::InvalidStructure, where + " has a bounded component on divisible arguments");
      }
    }
  }
  (void)nd;
}

Vector BilinearMap::apply(const Vector& x, const Vector& y) const {
  m_.check(x);
  m_.check(y);
  Vector out = n_.zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (y[j].is_zero()) continue;
      out = add(out, act(x[i], act(y[j], table_[i][j])));
    }
  }
  return out;
}

bool BilinearMap::is_zero() const {
  for (const auto& row : table_)
    for (const auto& v : row)
      if (!scalarkit::is_zero(v)) return false;
  return true;
}

BilinearMap BilinearMap::restrict(const Submodule& part, const ModuleDesc& codomain,
                                  const std::function<Vector(const Vector&)>& into) const {
  std::vector<std::vector<Vector>> t(part.size(), std::vector<Vector>(part.size()));
  for (std::size_t i = 0; i < part.size(); ++i)
    for (std::size_t j = 0; j < part.size(); ++j) t[i][j] = into(apply(part.basis[i], part.basis[j]));
  return BilinearMap(part.desc, codomain, std::move(t));
}

Submodule two_sided_kernel(const BilinearMap& f) {
  const std::size_t n = f.dim();
  std::vector<modules::Summand> big;
  for (std::size_t r = 0; r < 2 * n; ++r)
    big.insert(big.end(), f.codomain().summands().begin(), f.codomain().summands().end());
  ModuleDesc target(big);
  if (f.codomain().field() && n > 0) target = ModuleDesc::vector_space(*f.codomain().field(), big.size());
  std::vector<Vector> images;
  for (std::size_t i = 0; i < n; ++i) {
    Vector img;
    for (std::size_t j = 0; j < n; ++j) img.insert(img.end(), f.at(i, j).begin(), f.at(i, j).end());
    for (std::size_t j = 0; j < n; ++j) img.insert(img.end(), f.at(j, i).begin(), f.at(j, i).end());
    images.push_back(img);
  }
  return modules::kernel(f.domain(), target, images);
}

Submodule image_submodule(const BilinearMap& f) {
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < f.dim(); ++i)
    for (std::size_t j = 0; j < f.dim(); ++j)
      if (!is_zero(f.at(i, j))) gens.push_back(f.at(i, j));
  return modules::span(f.codomain(), gens);
}

bool is_full(const BilinearMap& f) {
  const auto& n = f.codomain();
  std::vector<Vector> all;
  for (std::size_t k = 0; k < n.size(); ++k) all.push_back(n.basis_element(k));
  return modules::same_submodule(n, image_submodule(f), modules::span(n, all));
}

bool is_nondegenerate(const BilinearMap& f) { return two_sided_kernel(f).is_zero(); }

BilinearSplit foundation_addition_split(const BilinearMap& f) {
  BilinearSplit out;
  out.domain_addition = two_sided_kernel(f);
  out.codomain_image = image_submodule(f);
  auto mc = modules::split_complement(out.domain_addition.basis, f.domain());
  if (!mc) fail(ErrorCode::NoSplit, "C(f) has no complement in " + f.domain().to_string());
  auto nc = modules::split_complement(out.codomain_image.basis, f.codomain());
  if (!nc) fail(ErrorCode::NoSplit, "im(f) has no complement in " + f.codomain().to_string());
  out.domain_foundation = *mc;
  out.codomain_addition = *nc;
  const auto& n = f.codomain();
  const auto& image = out.codomain_image;
  out.foundation = f.restrict(out.domain_foundation, image.desc, [&](const Vector& v) {
    auto c = modules::coordinates(n, image, v);
    if (!c) fail(ErrorCode::InvalidStructure, "product outside the image");
    return *c;
  });
  const auto& add_n = out.codomain_addition.desc;
  out.addition = f.restrict(out.domain_addition, add_n, [&](const Vector& v) {
    if (!is_zero(v)) fail(ErrorCode::InvalidStructure, "kernel elements multiply to a nonzero value");
    return add_n.zero();
  });
  return out;
}

Vector BilinearSplit::reassemble(const ModuleDesc& m, const ModuleDesc& n, const Vector& x, const Vector& y) const {
  Submodule whole{domain_foundation.desc + domain_addition.desc, domain_foundation.basis};
  whole.basis.insert(whole.basis.end(), domain_addition.basis.begin(), domain_addition.basis.end());
  auto cx = modules::coordinates(m, whole, x);
  auto cy = modules::coordinates(m, whole, y);
  if (!cx || !cy) fail(ErrorCode::InvalidStructure, "foundation and addition do not span the domain");
  const std::size_t k = domain_foundation.size();
  Vector x1(cx->begin(), cx->begin() + k), x2(cx->begin() + k, cx->end());
  Vector y1(cy->begin(), cy->begin() + k), y2(cy->begin() + k, cy->end());
  Vector v1 = modules::embed(n, codomain_image, foundation.apply(x1, y1));
  Vector v2 = modules::embed(n, codomain_addition, addition.apply(x2, y2));
  return add(v1, v2);
}

TorsionSplit torsion_split(const BilinearMap& f) {
  TorsionSplit out;
  out.domain_split = modules::divisible_bounded_split(f.domain());
  out.codomain_split = modules::divisible_bounded_split(f.codomain());
  auto block = [&](const std::vector<std::size_t>& idx, const ModuleDesc& target,
                   const std::vector<std::size_t>& keep) {
    std::vector<std::vector<Vector>> t(idx.size(), std::vector<Vector>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) {
        const Vector& v = f.at(idx[a], idx[b]);
        for (std::size_t k = 0; k < v.size(); ++k)
          if (std::find(keep.begin(), keep.end(), k) == keep.end() && !v[k].is_zero())
            fail(ErrorCode::InvalidStructure, "torsion block leaks across the split");
        for (auto k : keep) t[a][b].push_back(v[k]);
      }
    return BilinearMap(f.domain().restrict(idx), target, std::move(t));
  };
  const auto& ds = out.domain_split;
  const auto& cs = out.codomain_split;
  for (auto i : ds.divisible_indices)
    for (auto j : ds.bounded_indices)
      if (!is_zero(f.at(i, j)) || !is_zero(f.at(j, i)))
        fail(ErrorCode::InvalidStructure, "nonzero cross product between divisible and bounded parts");
  out.divisible = block(ds.divisible_indices, cs.divisible, cs.divisible_indices);
  out.bounded = block(ds.bounded_indices, cs.bounded, cs.bounded_indices);
  return out;
}

std::uint64_t encode(const Vector& v, std::uint64_t p) {
  std::uint64_t code = 0;
  for (std::size_t k = v.size(); k-- > 0;) code = code * p + v[k].value().get_num().get_ui();
  return code;
}

Vector decode(std::uint64_t code, const Domain& field, std::size_t dim) {
  const std::uint64_t p = field.modulus().get_ui();
  Vector v;
  for (std::size_t k = 0; k < dim; ++k) {
    v.emplace_back(field, Rational(static_cast<unsigned long>(code % p)));
    code /= p;
  }
  return v;
}

std::optional<std::uint64_t> finite_size(const ModuleDesc& m, std::uint64_t limit) {
  if (!m.field() || m.field()->kind() != DomainKind::PrimeField) return std::nullopt;
  if (!m.field()->modulus().fits_ulong_p()) return std::nullopt;
  const std::uint64_t p = m.field()->modulus().get_ui();
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (size > limit / p) return std::nullopt;
    size *= p;
  }
  return size;
}

std::optional<unsigned> sumset_width(const std::vector<std::uint64_t>& values, const Integer& p, std::size_t dim,
                                     std::uint64_t target_size, unsigned search_bound) {
  const std::uint64_t q = p.get_ui();
  auto add_codes = [&](std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0, scale = 1;
    for (std::size_t k = 0; k < dim; ++k) {
      out += ((a % q + b % q) % q) * scale;
      a /= q;
      b /= q;
      scale *= q;
    }
    return out;
  };
  std::unordered_set<std::uint64_t> base(values.begin(), values.end());
  std::unordered_set<std::uint64_t> current{0};
  std::vector<std::uint64_t> base_list(base.begin(), base.end());
  std::sort(base_list.begin(), base_list.end());
  if (target_size <= 1) return 0u;
  for (unsigned s = 1; s <= search_bound; ++s) {
    std::unordered_set<std::uint64_t> next;
    for (auto a : current)
      for (auto b : base_list) next.insert(add_codes(a, b));
    if (next.size() >= target_size) return s;
    if (next == current) return std::nullopt;
    current = std::move(next);
  }
  return std::nullopt;
}

namespace {

constexpr std::uint64_t kExactWidthLimit = 729;

}  // namespace

WidthResult width(const BilinearMap& f, unsigned search_bound) {
  WidthResult out;
  Submodule image = image_submodule(f);
  if (image.is_zero()) {
    out.exact = true;
    out.method = "zero image";
    return out;
  }
  auto size = finite_size(f.domain(), kExactWidthLimit);
  if (size && f.codomain().field() == f.domain().field()) {
    const Domain& field = *f.domain().field();
    const std::uint64_t p = field.modulus().get_ui();
    const std::size_t n = f.dim();
    std::vector<Vector> elems;
    for (std::uint64_t c = 0; c < *size; ++c) elems.push_back(decode(c, field, n));
    std::unordered_set<std::uint64_t> products;
    for (const auto& x : elems)
      for (const auto& y : elems) products.insert(encode(f.apply(x, y), p));
    std::uint64_t target = 1;
    for (std::size_t k = 0; k < image.size(); ++k) target *= p;
    std::vector<std::uint64_t> vals(products.begin(), products.end());
    std::sort(vals.begin(), vals.end());
    auto s = sumset_width(vals, field.modulus(), f.codomain().size(), target, search_bound);
    if (!s) fail(ErrorCode::SearchBoundExceeded, "width exceeds " + std::to_string(search_bound));
    out.value = *s;
    out.exact = true;
    out.method = "sumset enumeration";
    return out;
  }
  // Upper bound: an im-basis chosen among the products, each a single product.
  std::vector<Vector> chosen;
  const auto& n = f.codomain();
  for (std::size_t i = 0; i < f.dim(); ++i)
    for (std::size_t j = 0; j < f.dim(); ++j) {
      if (is_zero(f.at(i, j))) continue;
      std::vector<Vector> trial = chosen;
      trial.push_back(f.at(i, j));
      if (modules::span(n, trial).size() > modules::span(n, chosen).size() || chosen.empty()) {
        chosen = std::move(trial);
        out.certificate.emplace_back(i, j);
      }
    }
  std::size_t bound = 0;
  if (n.field()) {
    bound = std::min(image.size(), f.dim());
    out.method = "dim im bound";
  } else {
    // sum_ij c_ij f(b_i, b_j) = sum_j f(sum_i c_ij b_i, b_j)
    for (std::size_t j = 0; j < f.dim(); ++j)
      for (std::size_t i = 0; i < f.dim(); ++i)
        if (!is_zero(f.at(i, j))) {
          ++bound;
          break;
        }
    out.method = "column bound";
  }
  out.value = static_cast<unsigned>(bound);
  out.exact = n.field() && image.size() == 1;
  return out;
}

}  // namespace scalarkit::bilinear
