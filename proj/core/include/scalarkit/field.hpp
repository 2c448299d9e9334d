#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "scalarkit/errors.hpp"

namespace scalarkit {

using Integer = mpz_class;
// mpq_class keeps every value canonical: lowest terms, positive denominator.
using Rational = mpq_class;

std::string to_string(const Integer& v);
std::string to_string(const Rational& v);
/// Parses "p", "-p", "p/q"; throws InvalidStructure on malformed text or q == 0.
Rational parse_rational(std::string_view text);
bool is_probable_prime(const Integer& n);

enum class DomainKind { Rationals, PrimeField, Integers, Residues, Extension };

/// Coefficient domain selecting the exact arithmetic used by Scalar.
///
/// Extensions are simple: base[a]/(minpoly) with base either the rationals
/// or a prime field, minpoly monic irreducible of degree >= 2. The
/// irreducibility check runs at construction.
class Domain {
 public:
  Domain() = default;
  static Domain rationals();
  static Domain prime_field(const Integer& p);
  static Domain integers();
  static Domain residues(const Integer& m);
  /// minpoly: base coefficients, constant term first. Normalized to monic.
  static Domain extension(const Domain& base, std::vector<Rational> minpoly);

  DomainKind kind() const;
  bool is_field() const;
  /// p for prime fields and their extensions, m for residues, 0 otherwise.
  const Integer& modulus() const;
  Integer characteristic() const;
  /// Number of elements for finite domains.
  std::optional<Integer> order() const;
  /// Degree over the prime field / rationals (1 unless Extension).
  std::size_t degree() const;
  /// The domain an Extension is built over; itself otherwise.
  Domain base() const;
  /// Monic minimal polynomial of an Extension, constant term first.
  const std::vector<Rational>& minpoly() const;

  std::string to_string() const;
  bool operator==(const Domain& other) const;
  bool operator!=(const Domain& other) const { return !(*this == other); }
  bool valid() const { return static_cast<bool>(data_); }

 private:
  struct Data;
  explicit Domain(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

/// An element of a Domain. Immutable value; arithmetic between scalars of
/// different domains throws DomainMismatch.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Domain& domain, const Rational& value);
  Scalar(const Domain& domain, long value) : Scalar(domain, Rational(value)) {}
  /// Extension element from base coefficients (constant term first).
  static Scalar from_coefficients(const Domain& domain, std::vector<Rational> coeffs);
  static Scalar zero(const Domain& domain) { return Scalar(domain, 0L); }
  static Scalar one(const Domain& domain) { return Scalar(domain, 1L); }
  /// The adjoined root `a` of an Extension.
  static Scalar generator(const Domain& domain);
  /// Literal forms: "3/4", "-2", "2 mod 5" (modulus must match the domain).
  static Scalar parse(const Domain& domain, std::string_view text);

  const Domain& domain() const { return domain_; }
  bool is_zero() const;
  bool is_one() const;
  /// Value for non-extension domains (integers reduced into [0, m) for
  /// modular domains).
  const Rational& value() const;
  /// Base coefficients; size 1 for non-extension domains.
  const std::vector<Rational>& coefficients() const { return c_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  std::optional<Scalar> try_inverse() const;
  /// Throws NotInvertible.
  Scalar inverse() const;
  Scalar pow(const Integer& e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  /// Total order used for canonical output (not a field order).
  bool operator<(const Scalar& o) const;

  std::string to_string() const;

 private:
  Scalar(Domain domain, std::vector<Rational> c) : domain_(std::move(domain)), c_(std::move(c)) {}
  void check_same(const Scalar& o) const;
  Domain domain_;
  std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

using Vector = std::vector<Scalar>;

Vector zero_vector(const Domain& d, std::size_t n);
Vector unit_vector(const Domain& d, std::size_t n, std::size_t i);
bool is_zero(const Vector& v);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Scalar& s, const Vector& v);
std::string to_string(const Vector& v);

/// Deterministic pseudo-random source. The distribution helpers do not go
/// through <random> distributions so sequences are identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  /// Uniform element of a finite domain, small-height element otherwise.
  Scalar scalar(const Domain& d, std::int64_t height = 3);
  Rational rational(std::int64_t height = 5);

 private:
  std::mt19937_64 engine_;
};

}  // namespace scalarkit
