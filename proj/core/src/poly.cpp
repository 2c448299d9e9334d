#include "scalarkit/poly.hpp"

namespace scalarkit {

Poly::Poly(Domain domain, std::vector<Scalar> coeffs) : domain_(std::move(domain)), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.domain() != domain_) fail(ErrorCode::DomainMismatch, "polynomial coefficient outside " + domain_.to_string());
  trim();
}

Poly Poly::from_rationals(const Domain& domain, const std::vector<Rational>& coeffs) {
  std::vector<Scalar> c;
  c.reserve(coeffs.size());
  for (const auto& v : coeffs) c.emplace_back(domain, v);
  return Poly(domain, std::move(c));
}

Poly Poly::constant(const Scalar& c) { return Poly(c.domain(), {c}); }

Poly Poly::x(const Domain& domain) { return Poly(domain, {Scalar::zero(domain), Scalar::one(domain)}); }

Poly Poly::linear(const Scalar& root) { return Poly(root.domain(), {-root, Scalar::one(root.domain())}); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Poly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar::zero(domain_); }

Scalar Poly::leading() const { return c_.empty() ? Scalar::zero(domain_) : c_.back(); }

Poly Poly::operator+(const Poly& o) const {
  std::vector<Scalar> c(std::max(c_.size(), o.c_.size()), Scalar::zero(domain_));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
  return Poly(domain_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Scalar> c(std::max(c_.size(), o.c_.size()), Scalar::zero(domain_));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - o.coeff(i);
  return Poly(domain_, std::move(c));
}

Poly Poly::operator-() const { return Poly(domain_) - *this; }

Poly Poly::operator*(const Poly& o) const {
  if (domain_ != o.domain_) fail(ErrorCode::DomainMismatch, "polynomials over different domains");
  if (c_.empty() || o.c_.empty()) return Poly(domain_);
  std::vector<Scalar> c(c_.size() + o.c_.size() - 1, Scalar::zero(domain_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  }
  return Poly(domain_, std::move(c));
}

Poly Poly::operator*(const Scalar& s) const {
  std::vector<Scalar> c;
  c.reserve(c_.size());
  for (const auto& v : c_) c.push_back(v * s);
  return Poly(domain_, std::move(c));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) fail(ErrorCode::NotInvertible, "polynomial division by zero");
  Scalar inv = divisor.leading().inverse();
  std::vector<Scalar> rem = c_;
  const std::size_t dd = divisor.c_.size();
  if (rem.size() < dd) return {Poly(domain_), *this};
  std::vector<Scalar> quo(rem.size() - dd + 1, Scalar::zero(domain_));
  for (std::size_t k = rem.size(); k-- >= dd;) {
    Scalar q = rem[k] * inv;
    std::size_t shift = k - (dd - 1);
    quo[shift] = q;
    if (q.is_zero()) continue;
    for (std::size_t i = 0; i < dd; ++i) rem[shift + i] -= q * divisor.c_[i];
  }
  rem.resize(dd - 1, Scalar::zero(domain_));
  return {Poly(domain_, std::move(quo)), Poly(domain_, std::move(rem))};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inverse();
}

Poly Poly::derivative() const {
  std::vector<Scalar> c;
  for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * Scalar(domain_, static_cast<long>(i)));
  return Poly(domain_, std::move(c));
}

Scalar Poly::evaluate(const Scalar& at) const {
  Scalar acc = Scalar::zero(domain_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
  return acc;
}

Poly Poly::compose(const Poly& inner) const {
  Poly acc(domain_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * inner + constant(c_[i]);
  return acc;
}

std::string Poly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Scalar& c = c_[k];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool compound = cs.find_first_of("+ ") != std::string::npos ||
                    (cs.find('-', 1) != std::string::npos);
    bool negative = !compound && !cs.empty() && cs[0] == '-';
    if (negative) cs = cs.substr(1);
    if (compound) cs = "(" + cs + ")";
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    if (k == 0)
      out += cs;
    else if (cs == "1")
      out += mono;
    else
      out += cs + "*" + mono;
  }
  return out;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly powmod(const Poly& base, const Integer& exponent, const Poly& modulus) {
  Poly result = Poly::constant(Scalar::one(base.domain())) % modulus;
  Poly b = base % modulus;
  Integer e = exponent;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = (result * b) % modulus;
    e >>= 1;
    if (e > 0) b = (b * b) % modulus;
  }
  return result;
}

}  // namespace scalarkit
