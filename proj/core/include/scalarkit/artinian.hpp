#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scalarkit/matrix.hpp"
#include "scalarkit/poly.hpp"

namespace scalarkit::artinian {

/// Finite-dimensional commutative unital algebra over a field, given by
/// structure constants table[i][j] = b_i * b_j in basis coordinates.
class CommutativeAlgebra {
 public:
  CommutativeAlgebra() = default;
  /// Checks commutativity, associativity and the unit laws on all basis triples.
  CommutativeAlgebra(Domain base, std::vector<std::vector<Vector>> table, Vector unit);

  /// base[x]/(m) with basis 1, x, ..., x^{deg m - 1}.
  static CommutativeAlgebra polynomial_quotient(const Poly& m);
  /// Subalgebra of End(V) spanned by the given matrices (must contain the identity).
  static CommutativeAlgebra from_matrices(const Domain& base, const std::vector<Matrix>& basis);

  const Domain& base() const { return base_; }
  std::size_t dim() const { return unit_.size(); }
  const Vector& one() const { return unit_; }
  Vector zero() const { return zero_vector(base_, dim()); }
  Vector basis_element(std::size_t i) const { return unit_vector(base_, dim(), i); }
  const std::vector<std::vector<Vector>>& table() const { return table_; }

  Vector mul(const Vector& a, const Vector& b) const;
  Vector pow(const Vector& a, const Integer& e) const;
  /// Columns are a * b_j.
  Matrix multiplication_matrix(const Vector& a) const;
  Scalar trace(const Vector& a) const;
  /// Minimal polynomial of a inside the ideal e*A, whose unit is e.
  Poly minimal_polynomial(const Vector& a, const Vector& e) const;
  Poly minimal_polynomial(const Vector& a) const { return minimal_polynomial(a, unit_); }
  /// p(a) with constant term times e.
  Vector evaluate(const Poly& p, const Vector& a, const Vector& e) const;
  /// b with a*b = e inside e*A, if it exists.
  std::optional<Vector> inverse_in(const Vector& a, const Vector& e) const;
  bool is_idempotent(const Vector& a) const { return mul(a, a) == a; }
  bool is_nilpotent(const Vector& a) const;

  /// Basis of the product ideal span{x*y : x in I, y in K}.
  std::vector<Vector> product(const std::vector<Vector>& i, const std::vector<Vector>& k) const;

 private:
  Domain base_;
  std::vector<std::vector<Vector>> table_;
  Vector unit_;
};

/// Span of the nilpotent elements. Characteristic 0: kernel of the trace
/// form. Finite fields: kernel of a power of the Frobenius x -> x^q.
std::vector<Vector> radical(const CommutativeAlgebra& a);

struct ResidueField {
  std::size_t degree = 1;  // over the base
  Poly minpoly;            // of the chosen generator; degree-1 when the residue is the base
  Vector generator;        // an element of the factor reducing to the generator
  std::optional<Domain> field;  // the residue field as a domain when expressible
  bool finite = false;
  std::string to_string() const;
};

struct LocalFactor {
  Vector idempotent;
  std::vector<Vector> basis;          // of e*A
  std::vector<Vector> maximal_ideal;  // e*J
  unsigned nilpotency_index = 1;      // least n with J^n = 0
  ResidueField residue;
};

struct SplitOptions {
  std::uint64_t seed = 0x5eed;
  /// Raise NeedsExtension when a residue field is larger than the base.
  bool absolute = false;
  unsigned max_probes = 64;
};

/// Complete orthogonal primitive idempotents and the local factors they cut out.
std::vector<LocalFactor> local_decomposition(const CommutativeAlgebra& a, const SplitOptions& options = {});

struct JSeriesReport {
  std::vector<std::size_t> layer_dims;  // dim over the residue field of J^i / J^{i+1}
  std::size_t r_k = 0;
};

JSeriesReport j_series(const CommutativeAlgebra& a, const LocalFactor& lf);

/// Module over a local factor: action[t] is the matrix of lf.basis[t].
std::size_t r_k_module(const CommutativeAlgebra& a, const LocalFactor& lf, const std::vector<Matrix>& action,
                       std::size_t module_dim);

struct Representatives {
  std::vector<Vector> basis;  // 1, s, ..., s^{d-1} inside the factor
  Vector lifted_generator;    // s with minpoly(s) = 0
  Poly minpoly;
  unsigned newton_steps = 0;
  /// Residue coordinates (in 1, t, ..., t^{d-1}) of an element of the factor.
  std::vector<Rational> residue_coordinates(const CommutativeAlgebra& a, const LocalFactor& lf, const Vector& x) const;
};

Representatives field_of_representatives(const CommutativeAlgebra& a, const LocalFactor& lf);

/// True when e*A has no idempotent besides 0 and e (checked by a linear solve
/// over the reduced algebra).
bool is_connected(const CommutativeAlgebra& a, const Vector& e);

}  // namespace scalarkit::artinian
