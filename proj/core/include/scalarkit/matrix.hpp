#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalarkit/field.hpp"

namespace scalarkit {

/// Dense row-major matrix over a Domain.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Domain domain, std::size_t rows, std::size_t cols);
  static Matrix identity(const Domain& domain, std::size_t n);
  static Matrix from_rows(const Domain& domain, std::size_t cols, const std::vector<Vector>& rows);
  static Matrix from_columns(const Domain& domain, std::size_t rows, const std::vector<Vector>& cols);
  static Matrix from_values(const Domain& domain, std::size_t rows, std::size_t cols,
                            const std::vector<Rational>& row_major);

  const Domain& domain() const { return domain_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  const std::vector<Scalar>& entries() const { return entries_; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  std::vector<Vector> row_vectors() const;
  std::vector<Vector> column_vectors() const;

  Matrix operator*(const Matrix& o) const;
  Vector operator*(const Vector& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Scalar& s) const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }
  /// Horizontal concatenation.
  Matrix augment(const Matrix& right) const;
  Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  std::string to_string() const;

 private:
  Domain domain_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

// ---------------------------------------------------------------- fields

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row-echelon form; the domain must be a field (NonFieldDomain).
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Columns span {x : m x = 0}.
Matrix kernel_basis(const Matrix& m);

struct Solution {
  Vector particular;
  Matrix kernel;
};
/// Exact solution of m x = b, or nullopt when inconsistent.
std::optional<Solution> solve(const Matrix& m, const Vector& b);
std::optional<Matrix> inverse(const Matrix& m);
Scalar determinant(const Matrix& m);

/// Canonical basis (nonzero rows of the RREF) of the span of `vectors`.
std::vector<Vector> span_basis(const Domain& domain, std::size_t dim, const std::vector<Vector>& vectors);
/// Coordinates of v in the given independent basis, if v lies in its span.
std::optional<Vector> coordinates_in(const std::vector<Vector>& basis, const Vector& v);
/// Indices of standard basis vectors completing `basis` (in echelon form or
/// not) to a basis of the ambient space, chosen in increasing order.
std::vector<std::size_t> complement_indices(const Domain& domain, std::size_t dim, const std::vector<Vector>& basis);

// ---------------------------------------------------------------- integers

struct SmithResult {
  Matrix U;  // rows x rows, unimodular
  Matrix D;  // diagonal, d_i >= 0, d_i | d_{i+1}
  Matrix V;  // cols x cols, unimodular
};

/// U m V = D over the integers.
SmithResult smith_normal_form(const Matrix& m);
/// Row-style Hermite normal form; zero rows removed. Canonical for the row lattice.
Matrix hermite_normal_form(const Matrix& m);
/// Columns form a Z-basis of {x in Z^cols : m x = 0}.
Matrix integer_kernel(const Matrix& m);
/// Integer solution of m x = b, if any.
std::optional<Vector> integer_solve(const Matrix& m, const Vector& b);
/// Determinant of an integer matrix (exact, via rationals).
Integer integer_determinant(const Matrix& m);

}  // namespace scalarkit
