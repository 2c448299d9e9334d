#pragma once

#include <string>
#include <vector>

#include "scalarkit/field.hpp"

namespace scalarkit {

/// Dense univariate polynomial, constant term first. The coefficient list
/// is trimmed so the leading coefficient is nonzero (empty for zero).
class Poly {
 public:
  Poly() = default;
  explicit Poly(Domain domain) : domain_(std::move(domain)) {}
  Poly(Domain domain, std::vector<Scalar> coeffs);
  static Poly from_rationals(const Domain& domain, const std::vector<Rational>& coeffs);
  static Poly constant(const Scalar& c);
  static Poly x(const Domain& domain);
  /// x - root
  static Poly linear(const Scalar& root);

  const Domain& domain() const { return domain_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coefficients() const { return c_; }
  Scalar coeff(std::size_t i) const;
  Scalar leading() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Scalar& s) const;
  bool operator==(const Poly& o) const { return domain_ == o.domain_ && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Quotient and remainder; the divisor's leading coefficient must be a unit.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;
  Poly operator%(const Poly& m) const { return divmod(m).second; }
  Poly operator/(const Poly& m) const { return divmod(m).first; }

  Poly monic() const;
  Poly derivative() const;
  Scalar evaluate(const Scalar& at) const;
  /// p(q(x))
  Poly compose(const Poly& inner) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  Domain domain_;
  std::vector<Scalar> c_;
};

/// Monic gcd over a field (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly powmod(const Poly& base, const Integer& exponent, const Poly& modulus);

struct PolyFactor {
  Poly factor;  // monic irreducible
  unsigned multiplicity;
};

struct Factorization {
  Scalar unit;  // leading coefficient of the input
  std::vector<PolyFactor> factors;
};

/// Factorization into monic irreducibles over Q, GF(p), or an extension.
///
/// Finite fields use squarefree decomposition followed by distinct- and
/// equal-degree splitting. Over Q: squarefree decomposition, rational root
/// extraction, the quadratic-split search for quartics, and irreducibility
/// certificates from factorization patterns modulo small primes; anything
/// left undecided raises UnsupportedDegree. Extensions of Q go through the
/// norm (Trager) reduction to Q. Integers and residue rings raise
/// UnsupportedDomain.
Factorization poly_factor(const Poly& p);

/// Product of factor^multiplicity times the unit; used by checks.
Poly expand(const Factorization& f);

bool is_irreducible(const Poly& p);

/// Squarefree decomposition over a field: (g_i, i) with p = lc * prod g_i^i.
std::vector<PolyFactor> squarefree_decomposition(const Poly& p);

/// Roots of p lying in its coefficient field.
std::vector<Scalar> roots_in_field(const Poly& p);

/// Raised when a construction needs a root that the current field lacks.
class NeedsExtension : public Error {
 public:
  NeedsExtension(Poly poly, const std::string& message)
      : Error(ErrorCode::NeedsExtension, message + " (adjoin a root of " + poly.to_string() + ")"),
        poly_(std::move(poly)) {}
  const Poly& poly() const { return poly_; }

 private:
  Poly poly_;
};

}  // namespace scalarkit
