#include <algorithm>

#include "scalarkit/matrix.hpp"

namespace scalarkit {

namespace {

using IntMat = std::vector<std::vector<Integer>>;

IntMat to_int(const Matrix& m) {
  if (m.domain().kind() != DomainKind::Integers)
    fail(ErrorCode::DomainMismatch, "integer routine on a matrix over " + m.domain().to_string());
  IntMat out(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).value().get_num();
  return out;
}

Matrix from_int(const IntMat& a, std::size_t rows, std::size_t cols) {
  Domain z = Domain::integers();
  Matrix m(z, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Scalar(z, Rational(a[i][j]));
  return m;
}

IntMat int_identity(std::size_t n) {
  IntMat m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void swap_rows(IntMat& a, std::size_t i, std::size_t j) { std::swap(a[i], a[j]); }

void swap_cols(IntMat& a, std::size_t i, std::size_t j) {
  for (auto& row : a) std::swap(row[i], row[j]);
}

// row_i += k * row_j
void add_row(IntMat& a, std::size_t i, std::size_t j, const Integer& k) {
  for (std::size_t c = 0; c < a[i].size(); ++c) a[i][c] += k * a[j][c];
}

void add_col(IntMat& a, std::size_t i, std::size_t j, const Integer& k) {
  for (auto& row : a) row[i] += k * row[j];
}

}  // namespace

SmithResult smith_normal_form(const Matrix& m) {
  IntMat a = to_int(m);
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMat u = int_identity(rows), v = int_identity(cols);
  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    while (true) {
      // Smallest nonzero magnitude in the trailing block goes to (t, t).
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) break;
      if (pr != t) {
        swap_rows(a, pr, t);
        swap_rows(u, pr, t);
      }
      if (pc != t) {
        swap_cols(a, pc, t);
        swap_cols(v, pc, t);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Integer q = floor_div(a[i][t], a[t][t]);
        add_row(a, i, t, -q);
        add_row(u, i, t, -q);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer q = floor_div(a[t][j], a[t][t]);
        add_col(a, j, t, -q);
        add_col(v, j, t, -q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into row t and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            add_row(a, t, i, 1);
            add_row(u, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
  }
  return SmithResult{from_int(u, rows, rows), from_int(a, rows, cols), from_int(v, cols, cols)};
}

Matrix hermite_normal_form(const Matrix& m) {
  IntMat a = to_int(m);
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid down column c among rows r..rows-1.
    while (true) {
      std::size_t piv = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a[i][c] != 0 && (piv == rows || abs(a[i][c]) < abs(a[piv][c]))) piv = i;
      if (piv == rows) break;
      swap_rows(a, piv, r);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a[i][c] == 0) continue;
        add_row(a, i, r, -floor_div(a[i][c], a[r][c]));
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (auto& x : a[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) add_row(a, i, r, -floor_div(a[i][c], a[r][c]));
    ++r;
  }
  a.resize(r);
  return from_int(a, r, cols);
}

Matrix integer_kernel(const Matrix& m) {
  SmithResult s = smith_normal_form(m);
  std::size_t rank = 0;
  while (rank < std::min(m.rows(), m.cols()) && !s.D(rank, rank).is_zero()) ++rank;
  std::vector<Vector> cols;
  for (std::size_t j = rank; j < m.cols(); ++j) cols.push_back(s.V.column(j));
  return Matrix::from_columns(Domain::integers(), m.cols(), cols);
}

std::optional<Vector> integer_solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) fail(ErrorCode::DimensionMismatch, "right-hand side length != rows");
  Domain z = Domain::integers();
  SmithResult s = smith_normal_form(m);
  Vector c = s.U * b;
  Vector y = zero_vector(z, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Integer ci = c[i].value().get_num();
    Integer di = (i < m.cols()) ? s.D(i, i).value().get_num() : Integer(0);
    if (di == 0) {
      if (ci != 0) return std::nullopt;
      continue;
    }
    if (ci % di != 0) return std::nullopt;
    y[i] = Scalar(z, Rational(ci / di));
  }
  return s.V * y;
}

Integer integer_determinant(const Matrix& m) {
  Domain q = Domain::rationals();
  Matrix mq(q, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) mq(i, j) = Scalar(q, m(i, j).value());
  return determinant(mq).value().get_num();
}

}  // namespace scalarkit
