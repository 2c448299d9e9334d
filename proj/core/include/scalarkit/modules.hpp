#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalarkit/matrix.hpp"

namespace scalarkit::modules {

enum class SummandKind { RationalLine, FreeIntLine, Cyclic, FieldLine };

/// One primitive summand of a formal direct sum. FieldLine is a line over a
/// simple extension field; every other kind is determined by its tag.
struct Summand {
  SummandKind kind = SummandKind::RationalLine;
  Integer modulus = 0;  // Cyclic only
  Domain field;         // FieldLine only

  static Summand rational_line() { return {SummandKind::RationalLine, 0, {}}; }
  static Summand free_int_line() { return {SummandKind::FreeIntLine, 0, {}}; }
  static Summand cyclic(const Integer& m);
  static Summand field_line(const Domain& k);

  /// Q, Z, GF(p) when the cyclic modulus is prime, Z/m otherwise, or the extension.
  Domain coordinate_domain() const;
  bool divisible() const;
  bool bounded() const;
  std::string to_string() const;
  bool operator==(const Summand& o) const;
};

/// Finite formal direct sum of primitive summands. Coordinates of an
/// element are one Scalar per summand in that summand's coordinate domain.
class ModuleDesc {
 public:
  ModuleDesc() = default;
  explicit ModuleDesc(std::vector<Summand> summands);
  /// F^dim; remembers F even when dim == 0.
  static ModuleDesc vector_space(const Domain& field, std::size_t dim);
  static ModuleDesc free_integer(std::size_t rank);

  std::size_t size() const { return summands_.size(); }
  bool empty() const { return summands_.empty(); }
  const Summand& operator[](std::size_t i) const { return summands_[i]; }
  const std::vector<Summand>& summands() const { return summands_; }

  /// Set when every summand is a line over one common field.
  const std::optional<Domain>& field() const { return field_; }
  /// Only FreeIntLine and Cyclic summands (and not a pure field space).
  bool is_integer_module() const;
  bool is_mixed() const { return !field_ && !is_integer_module(); }

  std::vector<std::size_t> divisible_part() const;
  std::vector<std::size_t> bounded_part() const;
  std::vector<std::size_t> free_part() const;

  Vector zero() const;
  Vector basis_element(std::size_t i) const;
  /// Builds a coordinate vector from rational values, reducing cyclic parts.
  Vector element(const std::vector<Rational>& values) const;
  /// Throws ElementNotInModule if v has the wrong length or coordinate domains.
  void check(const Vector& v) const;
  bool contains_shape(const Vector& v) const;

  /// Same summands viewed as a Z-module; nullopt if a summand is not Z or Z/m.
  std::optional<ModuleDesc> integer_view() const;
  /// Subsequence of summands.
  ModuleDesc restrict(const std::vector<std::size_t>& indices) const;
  /// Direct sum (concatenation).
  ModuleDesc operator+(const ModuleDesc& other) const;
  bool operator==(const ModuleDesc& o) const { return summands_ == o.summands_ && field_ == o.field_; }

  std::string to_string() const;

 private:
  std::vector<Summand> summands_;
  std::optional<Domain> field_;
};

/// A submodule recorded as an internal direct sum: basis[i] generates a
/// copy of desc[i] inside the ambient module.
struct Submodule {
  ModuleDesc desc;
  std::vector<Vector> basis;

  std::size_t size() const { return basis.size(); }
  bool is_zero() const { return basis.empty(); }
};

/// Submodule generated by `generators`. Field case: echelonized basis.
/// Integer case: Smith-reduced cyclic decomposition.
Submodule span(const ModuleDesc& ambient, const std::vector<Vector>& generators);

/// Kernel of the homomorphism M -> N sending the i-th basis element to images[i].
Submodule kernel(const ModuleDesc& domain, const ModuleDesc& codomain, const std::vector<Vector>& images);

/// Coordinates of y in the submodule's basis, or nullopt if y is not in it.
std::optional<Vector> coordinates(const ModuleDesc& ambient, const Submodule& sub, const Vector& y);
bool contains(const ModuleDesc& ambient, const Submodule& sub, const Vector& y);
bool is_contained(const ModuleDesc& ambient, const Submodule& inner, const Submodule& outer);
bool same_submodule(const ModuleDesc& ambient, const Submodule& a, const Submodule& b);
Submodule intersection(const ModuleDesc& ambient, const Submodule& a, const Submodule& b);
/// Element of the ambient module from coordinates in the submodule basis.
Vector embed(const ModuleDesc& ambient, const Submodule& sub, const Vector& coords);

/// A complement C with ambient = <generators> (+) C internally, or nullopt
/// when none exists. Field spaces always split; f.g. Z-modules are decided
/// through Smith normal form of the quotient presentation.
std::optional<Submodule> split_complement(const std::vector<Vector>& generators, const ModuleDesc& ambient);

struct DivisibleBoundedSplit {
  ModuleDesc divisible;
  ModuleDesc bounded;
  std::vector<std::size_t> divisible_indices;  // positions in the input
  std::vector<std::size_t> bounded_indices;

  Vector project_divisible(const Vector& v) const;
  Vector project_bounded(const Vector& v) const;
  Vector reassemble(const Vector& divisible_part, const Vector& bounded_part) const;
};

/// M = M_D (+) M_B for a formal sum without free integer lines; throws
/// NotOmegaStableShape otherwise.
DivisibleBoundedSplit divisible_bounded_split(const ModuleDesc& m);

bool is_divisible(const ModuleDesc& m);
bool is_bounded(const ModuleDesc& m);
/// lcm of the orders of the bounded summands (1 for the zero module); 0 if unbounded.
Integer exponent(const ModuleDesc& m);
ModuleDesc torsion_part(const ModuleDesc& m);

}  // namespace scalarkit::modules
