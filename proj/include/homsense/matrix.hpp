#pragma once

// Dense row-major matrices over the rationals and the exact elimination
// routines everything else is built on.

#include <homsense/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace homsense {

using Vector = std::vector<Rational>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw std::invalid_argument("matrix entry count " + std::to_string(data_.size()) +
                                  " does not match shape " + std::to_string(rows_) + "x" +
                                  std::to_string(cols_));
  }

  static Matrix identity(std::size_t n) {
    Matrix id(n, n);
    for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
    return id;
  }

  static Matrix diagonal(const Vector& d) {
    Matrix out(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
    return out;
  }

  /// Integer literal convenience, mostly for tests: Matrix::from_ints({{1, 2}, {3, 4}}).
  static Matrix from_ints(std::initializer_list<std::initializer_list<long>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix out(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw std::invalid_argument("ragged matrix literal");
      std::size_t j = 0;
      for (long v : row) out(i, j++) = v;
      ++i;
    }
    return out;
  }

  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows) {
    Matrix out(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) out(i, j) = columns[j][i];
    }
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<Rational>& entries() const { return data_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vector row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<Vector> columns() const {
    std::vector<Vector> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix out(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) out(i, k) = (*this)(i, idx[k]);
    return out;
  }
  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix out(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j) out(k, j) = (*this)(idx[k], j);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b, "+");
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b, "-");
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
    return out;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix out = a;
    for (auto& x : out.data_) x = -x;
    return out;
  }
  friend Matrix operator*(const Rational& s, const Matrix& a) {
    Matrix out = a;
    for (auto& x : out.data_) x *= s;
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("matrix product shape mismatch " + a.shape() + " * " + b.shape());
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }
  friend Vector operator*(const Matrix& a, const Vector& x) {
    if (a.cols_ != x.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    Vector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (a(i, k) != 0) out[i] += a(i, k) * x[k];
    return out;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const Matrix& b, const char* op) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw std::invalid_argument(std::string("shape mismatch in '") + op + "': " + shape() + " vs " + b.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline Matrix hcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat row mismatch " + a.shape() + " | " + b.shape());
  Matrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

inline Matrix vcat(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vcat column mismatch " + a.shape() + " / " + b.shape());
  Matrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

inline bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination to reduced row echelon form.
inline RowEchelon rref(Matrix m) {
  RowEchelon out;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t piv = lead_row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != lead_row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(lead_row, j));
    const Rational inv = 1 / m(lead_row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(lead_row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead_row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(lead_row, j);
    }
    out.pivots.push_back(col);
    ++lead_row;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank(); }

/// Basis of the right null space, one column per free variable in ascending
/// order. Each column has a 1 in its free coordinate.
inline Matrix kernel_basis(const Matrix& m) {
  const RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Matrix basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis(f, k) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = -e.reduced(r, f);
  }
  return basis;
}

inline Rational determinant(Matrix m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of non-square matrix " + m.shape());
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const Rational inv = 1 / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

inline Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix " + m.shape());
  const std::size_t n = m.rows();
  const RowEchelon e = rref(hcat(m, Matrix::identity(n)));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) throw std::domain_error("matrix is singular");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

/// Solves A X = B exactly for A of full column rank with every column of B in
/// the column space of A. Throws std::domain_error otherwise.
inline Matrix solve_full_column_rank(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch " + a.shape() + " vs " + b.shape());
  const std::size_t n = a.cols();
  const RowEchelon e = rref(hcat(a, b));
  for (std::size_t r = 0; r < e.rank(); ++r) {
    if (e.pivots[r] >= n) throw std::domain_error("solve: right-hand side outside the column space");
    if (e.pivots[r] != r) throw std::domain_error("solve: coefficient matrix is column-rank deficient");
  }
  if (e.rank() < n) throw std::domain_error("solve: coefficient matrix is column-rank deficient");
  Matrix x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = e.reduced(i, n + j);
  return x;
}

/// Greedy left-to-right selection of a maximal independent subset of columns.
inline std::vector<std::size_t> independent_columns(const Matrix& m) { return rref(m).pivots; }

}  // namespace homsense
