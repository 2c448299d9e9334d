#include "scalarkit/field.hpp"

#include <ostream>

#include <algorithm>
#include <cctype>
#include <sstream>

#include "scalarkit/poly.hpp"

namespace scalarkit {

std::string to_string(const Integer& v) { return v.get_str(); }

std::string to_string(const Rational& v) { return v.get_str(); }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Integer parse_integer(std::string_view s) {
  s = trim(s);
  if (!valid_integer_text(s)) fail(ErrorCode::InvalidStructure, "malformed integer literal '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) fail(ErrorCode::InvalidStructure, "zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

// ---------------------------------------------------------------- Domain

struct Domain::Data {
  DomainKind kind;
  Integer modulus;                  // p or m
  std::shared_ptr<const Data> base;  // Extension only
  std::vector<Rational> minpoly;     // Extension only, monic
};

Domain Domain::rationals() {
  return Domain(std::make_shared<const Data>(Data{DomainKind::Rationals, 0, nullptr, {}}));
}

Domain Domain::integers() {
  return Domain(std::make_shared<const Data>(Data{DomainKind::Integers, 0, nullptr, {}}));
}

Domain Domain::prime_field(const Integer& p) {
  if (!is_probable_prime(p)) fail(ErrorCode::InvalidDomain, "GF(p) requires p prime, got " + p.get_str());
  return Domain(std::make_shared<const Data>(Data{DomainKind::PrimeField, p, nullptr, {}}));
}

Domain Domain::residues(const Integer& m) {
  if (m < 2) fail(ErrorCode::InvalidDomain, "Z/m requires m >= 2, got " + m.get_str());
  return Domain(std::make_shared<const Data>(Data{DomainKind::Residues, m, nullptr, {}}));
}

Domain Domain::extension(const Domain& base, std::vector<Rational> minpoly) {
  if (base.kind() != DomainKind::Rationals && base.kind() != DomainKind::PrimeField)
    fail(ErrorCode::InvalidDomain, "extension base must be Q or GF(p), got " + base.to_string());
  for (auto& c : minpoly) c = Scalar(base, c).value();
  while (!minpoly.empty() && minpoly.back() == 0) minpoly.pop_back();
  if (minpoly.size() < 3) fail(ErrorCode::InvalidDomain, "extension minimal polynomial must have degree >= 2");
  Scalar lead(base, minpoly.back());
  Scalar inv = lead.inverse();
  for (auto& c : minpoly) c = (Scalar(base, c) * inv).value();
  if (!is_irreducible(Poly::from_rationals(base, minpoly)))
    fail(ErrorCode::InvalidDomain, "extension minimal polynomial " +
                                       Poly::from_rationals(base, minpoly).to_string() + " is reducible over " +
                                       base.to_string());
  return Domain(std::make_shared<const Data>(Data{DomainKind::Extension, base.modulus(), base.data_, std::move(minpoly)}));
}

DomainKind Domain::kind() const { return data_->kind; }

bool Domain::is_field() const {
  return data_->kind == DomainKind::Rationals || data_->kind == DomainKind::PrimeField ||
         data_->kind == DomainKind::Extension;
}

const Integer& Domain::modulus() const { return data_->modulus; }

Integer Domain::characteristic() const { return data_->modulus; }

std::optional<Integer> Domain::order() const {
  switch (data_->kind) {
    case DomainKind::PrimeField:
    case DomainKind::Residues: return data_->modulus;
    case DomainKind::Extension:
      if (data_->modulus != 0) {
        Integer q;
        mpz_pow_ui(q.get_mpz_t(), data_->modulus.get_mpz_t(), static_cast<unsigned long>(degree()));
        return q;
      }
      return std::nullopt;
    default: return std::nullopt;
  }
}

std::size_t Domain::degree() const {
  return data_->kind == DomainKind::Extension ? data_->minpoly.size() - 1 : 1;
}

Domain Domain::base() const { return data_->kind == DomainKind::Extension ? Domain(data_->base) : *this; }

const std::vector<Rational>& Domain::minpoly() const { return data_->minpoly; }

std::string Domain::to_string() const {
  switch (data_->kind) {
    case DomainKind::Rationals: return "Q";
    case DomainKind::Integers: return "Z";
    case DomainKind::PrimeField: return "GF(" + data_->modulus.get_str() + ")";
    case DomainKind::Residues: return "Z/" + data_->modulus.get_str();
    case DomainKind::Extension:
      return base().to_string() + "[a]/(" + Poly::from_rationals(base(), data_->minpoly).to_string("a") + ")";
  }
  return "?";
}

bool Domain::operator==(const Domain& other) const {
  if (data_ == other.data_) return true;
  if (!data_ || !other.data_) return false;
  if (data_->kind != other.data_->kind || data_->modulus != other.data_->modulus) return false;
  if (data_->kind != DomainKind::Extension) return true;
  return data_->minpoly == other.data_->minpoly && data_->base == other.data_->base;
}

// ---------------------------------------------------------------- Scalar

namespace {

// Reduce a base-field coefficient (Q or GF(p)).
Rational reduce_base(const Integer& p, const Rational& v) {
  if (p == 0) return v;
  Integer num = mod_floor(v.get_num(), p);
  if (v.get_den() == 1) return Rational(num);
  Integer den = mod_floor(v.get_den(), p);
  Integer inv;
  if (den == 0 || mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
    fail(ErrorCode::NotInvertible, "denominator not invertible mod " + p.get_str());
  return Rational(mod_floor(num * inv, p));
}

Rational base_inverse(const Integer& p, const Rational& v) {
  if (v == 0) fail(ErrorCode::NotInvertible, "division by zero");
  if (p == 0) return 1 / v;
  Integer inv;
  mpz_invert(inv.get_mpz_t(), v.get_num().get_mpz_t(), p.get_mpz_t());
  return Rational(inv);
}

using BasePoly = std::vector<Rational>;

void trim_poly(BasePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic m over the base.
BasePoly base_rem(BasePoly a, const BasePoly& m, const Integer& p) {
  trim_poly(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    Rational lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = reduce_base(p, a[shift + i] - lead * m[i]);
    trim_poly(a);
  }
  return a;
}

// Inverse of a modulo m (m irreducible) by the extended Euclidean algorithm.
BasePoly base_poly_inverse(const BasePoly& a, const BasePoly& m, const Integer& p) {
  auto sub_mul = [&](const BasePoly& x, const BasePoly& q, const BasePoly& y) {
    BasePoly prod(q.size() + y.size(), Rational(0));
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) prod[i + j] += q[i] * y[j];
    BasePoly out(std::max(x.size(), prod.size()), Rational(0));
    for (std::size_t i = 0; i < out.size(); ++i) {
      Rational v = (i < x.size() ? x[i] : Rational(0)) - (i < prod.size() ? prod[i] : Rational(0));
      out[i] = reduce_base(p, v);
    }
    trim_poly(out);
    return out;
  };
  BasePoly r0 = m, r1 = a, s0, s1{Rational(1)};
  trim_poly(r1);
  while (!r1.empty()) {
    // q, r = divmod(r0, r1)
    BasePoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, Rational(0));
    BasePoly r = r0;
    Rational lead_inv = base_inverse(p, r1.back());
    while (!r.empty() && r.size() >= r1.size()) {
      std::size_t shift = r.size() - r1.size();
      Rational c = reduce_base(p, r.back() * lead_inv);
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i) r[shift + i] = reduce_base(p, r[shift + i] - c * r1[i]);
      trim_poly(r);
    }
    trim_poly(q);
    BasePoly s2 = sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant when gcd = 1.
  if (r0.size() != 1) fail(ErrorCode::NotInvertible, "element shares a factor with the minimal polynomial");
  Rational c = base_inverse(p, r0[0]);
  for (auto& v : s0) v = reduce_base(p, v * c);
  return s0;
}

}  // namespace

Scalar::Scalar(const Domain& domain, const Rational& input) : domain_(domain) {
  Rational value = input;
  value.canonicalize();
  switch (domain.kind()) {
    case DomainKind::Rationals: c_ = {value}; break;
    case DomainKind::Integers:
      if (value.get_den() != 1) fail(ErrorCode::DomainMismatch, "non-integer " + value.get_str() + " in Z");
      c_ = {value};
      break;
    case DomainKind::PrimeField:
    case DomainKind::Residues: c_ = {reduce_base(domain.modulus(), value)}; break;
    case DomainKind::Extension: {
      c_.assign(domain.degree(), Rational(0));
      c_[0] = reduce_base(domain.modulus(), value);
      break;
    }
  }
}

Scalar Scalar::from_coefficients(const Domain& domain, std::vector<Rational> coeffs) {
  if (domain.kind() != DomainKind::Extension) {
    if (coeffs.empty()) return zero(domain);
    for (std::size_t i = 1; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) fail(ErrorCode::DomainMismatch, "coefficient list longer than 1 outside an extension");
    return Scalar(domain, coeffs[0]);
  }
  for (auto& c : coeffs) {
    c.canonicalize();
    c = reduce_base(domain.modulus(), c);
  }
  coeffs = base_rem(std::move(coeffs), domain.minpoly(), domain.modulus());
  coeffs.resize(domain.degree(), Rational(0));
  return Scalar(domain, std::move(coeffs));
}

Scalar Scalar::generator(const Domain& domain) {
  if (domain.kind() != DomainKind::Extension) fail(ErrorCode::UnsupportedDomain, "generator() requires an extension");
  return from_coefficients(domain, {Rational(0), Rational(1)});
}

Scalar Scalar::parse(const Domain& domain, std::string_view text) {
  text = trim(text);
  auto pos = text.find("mod");
  if (pos != std::string_view::npos) {
    Integer m = parse_integer(text.substr(pos + 3));
    if (domain.kind() != DomainKind::PrimeField && domain.kind() != DomainKind::Residues)
      fail(ErrorCode::DomainMismatch, "literal '" + std::string(text) + "' is modular but domain is " + domain.to_string());
    if (m != domain.modulus())
      fail(ErrorCode::DomainMismatch, "literal modulus " + m.get_str() + " does not match " + domain.to_string());
    return Scalar(domain, Rational(parse_integer(text.substr(0, pos))));
  }
  return Scalar(domain, parse_rational(text));
}

bool Scalar::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& v) { return v == 0; });
}

bool Scalar::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& v) { return v == 0; });
}

const Rational& Scalar::value() const {
  if (domain_.kind() == DomainKind::Extension) fail(ErrorCode::UnsupportedDomain, "value() on an extension element");
  return c_[0];
}

void Scalar::check_same(const Scalar& o) const {
  if (!domain_.valid() || !o.domain_.valid()) fail(ErrorCode::DomainMismatch, "arithmetic on an unset scalar");
  if (domain_ != o.domain_)
    fail(ErrorCode::DomainMismatch, "cannot combine " + domain_.to_string() + " and " + o.domain_.to_string());
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  std::vector<Rational> c(c_.size());
  const Integer& m = domain_.modulus();
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = reduce_base(m, c_[i] + o.c_[i]);
  return Scalar(domain_, std::move(c));
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  std::vector<Rational> c(c_.size());
  const Integer& m = domain_.modulus();
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = reduce_base(m, c_[i] - o.c_[i]);
  return Scalar(domain_, std::move(c));
}

Scalar Scalar::operator-() const {
  std::vector<Rational> c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = reduce_base(domain_.modulus(), -c_[i]);
  return Scalar(domain_, std::move(c));
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  const Integer& m = domain_.modulus();
  if (domain_.kind() != DomainKind::Extension) return Scalar(domain_, std::vector<Rational>{reduce_base(m, c_[0] * o.c_[0])});
  BasePoly prod(2 * c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
  }
  for (auto& v : prod) v = reduce_base(m, v);
  prod = base_rem(std::move(prod), domain_.minpoly(), m);
  prod.resize(c_.size(), Rational(0));
  return Scalar(domain_, std::move(prod));
}

std::optional<Scalar> Scalar::try_inverse() const {
  if (!domain_.valid() || is_zero()) return std::nullopt;
  switch (domain_.kind()) {
    case DomainKind::Rationals: return Scalar(domain_, std::vector<Rational>{1 / c_[0]});
    case DomainKind::Integers:
      if (c_[0] == 1 || c_[0] == -1) return *this;
      return std::nullopt;
    case DomainKind::PrimeField:
    case DomainKind::Residues: {
      Integer inv;
      if (mpz_invert(inv.get_mpz_t(), c_[0].get_num().get_mpz_t(), domain_.modulus().get_mpz_t()) == 0)
        return std::nullopt;
      return Scalar(domain_, Rational(inv));
    }
    case DomainKind::Extension: {
      BasePoly inv = base_poly_inverse(c_, domain_.minpoly(), domain_.modulus());
      return from_coefficients(domain_, std::move(inv));
    }
  }
  return std::nullopt;
}

Scalar Scalar::inverse() const {
  auto inv = try_inverse();
  if (!inv) fail(ErrorCode::NotInvertible, to_string() + " is not invertible in " + domain_.to_string());
  return *inv;
}

Scalar Scalar::pow(const Integer& e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result = one(domain_);
  Scalar base = *this;
  Integer k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

bool Scalar::operator==(const Scalar& o) const { return domain_ == o.domain_ && c_ == o.c_; }

bool Scalar::operator<(const Scalar& o) const {
  return std::lexicographical_compare(c_.rbegin(), c_.rend(), o.c_.rbegin(), o.c_.rend());
}

std::string Scalar::to_string() const {
  if (!domain_.valid()) return "<unset>";
  if (domain_.kind() != DomainKind::Extension) return c_[0].get_str();
  std::vector<Rational> c = c_;
  return Poly::from_rationals(domain_.base(), c).to_string("a");
}

// ---------------------------------------------------------------- vectors

Vector zero_vector(const Domain& d, std::size_t n) { return Vector(n, Scalar::zero(d)); }

Vector unit_vector(const Domain& d, std::size_t n, std::size_t i) {
  Vector v = zero_vector(d, n);
  v.at(i) = Scalar::one(d);
  return v;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "vector sizes differ");
  Vector out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

Vector sub(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "vector sizes differ");
  Vector out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
  return out;
}

Vector scale(const Scalar& s, const Vector& v) {
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(s * x);
  return out;
}

std::string to_string(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].to_string();
  }
  return out + ")";
}

// ---------------------------------------------------------------- Rng

Rational Rng::rational(std::int64_t height) {
  std::int64_t num = range(-height, height);
  std::int64_t den = range(1, height);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Scalar Rng::scalar(const Domain& d, std::int64_t height) {
  auto coefficient = [&](const Domain& base) -> Rational {
    if (base.kind() == DomainKind::PrimeField || base.kind() == DomainKind::Residues) {
      // Moduli in this library are desk-scale; reduce a 64-bit draw.
      Integer m = base.modulus();
      Integer r = Integer(std::to_string(next())) % m;
      return Rational(r);
    }
    if (base.kind() == DomainKind::Integers) return Rational(range(-height, height));
    return rational(height);
  };
  if (d.kind() == DomainKind::Extension) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < d.degree(); ++i) c.push_back(coefficient(d.base()));
    return Scalar::from_coefficients(d, std::move(c));
  }
  return Scalar(d, coefficient(d));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace scalarkit
