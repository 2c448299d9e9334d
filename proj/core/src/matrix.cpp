#include "scalarkit/matrix.hpp"

#include <sstream>

namespace scalarkit {

Matrix::Matrix(Domain domain, std::size_t rows, std::size_t cols)
    : domain_(std::move(domain)), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(domain_)) {}

Matrix Matrix::identity(const Domain& domain, std::size_t n) {
  Matrix m(domain, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(domain);
  return m;
}

Matrix Matrix::from_rows(const Domain& domain, std::size_t cols, const std::vector<Vector>& rows) {
  Matrix m(domain, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorCode::DimensionMismatch, "row length differs from column count");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(const Domain& domain, std::size_t rows, const std::vector<Vector>& cols) {
  Matrix m(domain, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) fail(ErrorCode::DimensionMismatch, "column length differs from row count");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Matrix Matrix::from_values(const Domain& domain, std::size_t rows, std::size_t cols,
                           const std::vector<Rational>& row_major) {
  if (row_major.size() != rows * cols) fail(ErrorCode::DimensionMismatch, "entry count != rows * cols");
  Matrix m(domain, rows, cols);
  for (std::size_t i = 0; i < row_major.size(); ++i) m.entries_[i] = Scalar(domain, row_major[i]);
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

std::vector<Vector> Matrix::row_vectors() const {
  std::vector<Vector> out;
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

std::vector<Vector> Matrix::column_vectors() const {
  std::vector<Vector> out;
  for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Matrix out(domain_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o(k, j);
        if (!b.is_zero()) out(i, j) += a * b;
      }
    }
  return out;
}

Vector Matrix::operator*(const Vector& v) const {
  if (v.size() != cols_) fail(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  Vector out = zero_vector(domain_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (!a.is_zero() && !v[k].is_zero()) out[i] += a * v[k];
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += o.entries_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] -= o.entries_[i];
  return out;
}

Matrix Matrix::operator*(const Scalar& s) const {
  Matrix out = *this;
  for (auto& e : out.entries_) e *= s;
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

Matrix Matrix::transpose() const {
  Matrix out(domain_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

Matrix Matrix::augment(const Matrix& right) const {
  if (rows_ != right.rows_) fail(ErrorCode::DimensionMismatch, "augment needs equal row counts");
  Matrix out(domain_, rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) out(i, cols_ + j) = right(i, j);
  }
  return out;
}

Matrix Matrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix out(domain_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ",";
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ",";
      os << (*this)(i, j).to_string();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- fields

namespace {

void require_field(const Domain& d, const char* op) {
  if (!d.is_field()) fail(ErrorCode::NonFieldDomain, std::string(op) + " needs a field, got " + d.to_string());
}

}  // namespace

RrefResult rref(const Matrix& input) {
  require_field(input.domain(), "rref");
  Matrix m = input;
  RrefResult result;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    Scalar inv = m(row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      Scalar f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
    }
    result.pivots.push_back(col);
    ++row;
  }
  result.rank = result.pivots.size();
  result.reduced = std::move(m);
  return result;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel_basis(const Matrix& m) {
  RrefResult r = rref(m);
  const Domain& d = m.domain();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> cols;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(d, m.cols());
    v[free] = Scalar::one(d);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, free);
    cols.push_back(std::move(v));
  }
  return Matrix::from_columns(d, m.cols(), cols);
}

std::optional<Solution> solve(const Matrix& m, const Vector& b) {
  require_field(m.domain(), "solve");
  if (b.size() != m.rows()) fail(ErrorCode::DimensionMismatch, "right-hand side length != rows");
  const Domain& d = m.domain();
  Matrix aug = m.augment(Matrix::from_columns(d, m.rows(), {b}));
  RrefResult r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  Vector x = zero_vector(d, m.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.reduced(i, m.cols());
  return Solution{std::move(x), kernel_basis(m)};
}

std::optional<Matrix> inverse(const Matrix& m) {
  require_field(m.domain(), "inverse");
  if (!m.is_square()) fail(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RrefResult r = rref(m.augment(Matrix::identity(m.domain(), n)));
  if (r.rank < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  return r.reduced.submatrix(0, n, n, n);
}

Scalar determinant(const Matrix& input) {
  require_field(input.domain(), "determinant");
  if (!input.is_square()) fail(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  Matrix m = input;
  const std::size_t n = m.rows();
  Scalar det = Scalar::one(m.domain());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col).is_zero()) ++piv;
    if (piv == n) return Scalar::zero(m.domain());
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    Scalar inv = m(col, col).inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      Scalar f = m(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

std::vector<Vector> span_basis(const Domain& domain, std::size_t dim, const std::vector<Vector>& vectors) {
  if (vectors.empty()) return {};
  RrefResult r = rref(Matrix::from_rows(domain, dim, vectors));
  std::vector<Vector> out;
  for (std::size_t i = 0; i < r.rank; ++i) out.push_back(r.reduced.row(i));
  return out;
}

std::optional<Vector> coordinates_in(const std::vector<Vector>& basis, const Vector& v) {
  if (basis.empty()) {
    if (is_zero(v)) return Vector{};
    return std::nullopt;
  }
  if (v.empty()) return zero_vector(basis.front().empty() ? Domain::rationals() : basis.front().front().domain(), basis.size());
  const Domain& d = basis.front().front().domain();
  auto sol = solve(Matrix::from_columns(d, v.size(), basis), v);
  if (!sol) return std::nullopt;
  return sol->particular;
}

std::vector<std::size_t> complement_indices(const Domain& domain, std::size_t dim, const std::vector<Vector>& basis) {
  std::vector<std::size_t> out;
  std::vector<Vector> current = basis;
  std::size_t r = current.empty() ? 0 : rank(Matrix::from_rows(domain, dim, current));
  for (std::size_t i = 0; i < dim && r < dim; ++i) {
    current.push_back(unit_vector(domain, dim, i));
    std::size_t nr = rank(Matrix::from_rows(domain, dim, current));
    if (nr > r) {
      out.push_back(i);
      r = nr;
    } else {
      current.pop_back();
    }
  }
  return out;
}

}  // namespace scalarkit
