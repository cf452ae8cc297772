#pragma once

// Matrices over Q[y] and their Smith normal form.

#include <homsense/matrix.hpp>
#include <homsense/polynomial.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace homsense {

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static PolyMatrix identity(std::size_t n) {
    PolyMatrix id(n, n);
    for (std::size_t i = 0; i < n; ++i) id(i, i) = Polynomial(Rational(1));
    return id;
  }

  /// yI - T
  static PolyMatrix characteristic(const Matrix& t) {
    if (!t.is_square()) throw std::invalid_argument("characteristic matrix of non-square " + t.shape());
    PolyMatrix out(t.rows(), t.cols());
    for (std::size_t i = 0; i < t.rows(); ++i)
      for (std::size_t j = 0; j < t.cols(); ++j)
        out(i, j) = (i == j) ? Polynomial::linear(t(i, j)) : Polynomial(Rational(-t(i, j)));
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  Polynomial& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("poly matrix product mismatch " + a.shape() + " * " + b.shape());
    PolyMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] -= f * row[src]
  void sub_row(std::size_t dst, std::size_t src, const Polynomial& f) {
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(src, j).is_zero()) (*this)(dst, j) -= f * (*this)(src, j);
  }
  /// col[dst] -= f * col[src]
  void sub_col(std::size_t dst, std::size_t src, const Polynomial& f) {
    for (std::size_t i = 0; i < rows_; ++i)
      if (!(*this)(i, src).is_zero()) (*this)(i, dst) -= f * (*this)(i, src);
  }
  void scale_row(std::size_t r, const Rational& s) {
    const Polynomial ps(s);
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = ps * (*this)(r, j);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Polynomial> data_;
};

/// Fraction-free (Bareiss) determinant over Q[y]; every division is exact.
inline Polynomial determinant(PolyMatrix m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of non-square poly matrix " + m.shape());
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial(Rational(1));
  Polynomial prev(Rational(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k).is_zero()) ++piv;
      if (piv == n) return {};
      m.swap_rows(k, piv);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
      m(i, k) = Polynomial{};
    }
    prev = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

struct SmithForm {
  std::vector<Polynomial> diagonal;  // d_1 | d_2 | ..., each monic or zero
  PolyMatrix left;                   // U, unimodular
  PolyMatrix right;                  // V, unimodular; U * P * V = diag
};

/// Smith normal form of a square polynomial matrix. The pivot at each stage is
/// the nonzero entry of least degree in the trailing block (first in row-major
/// order on ties), rescaled to be monic. Transforms are accumulated only when
/// requested.
inline SmithForm smith_normal_form(const PolyMatrix& p, bool with_transforms = true) {
  if (!p.is_square()) throw std::invalid_argument("Smith normal form requires a square matrix, got " + p.shape());
  const std::size_t n = p.rows();
  PolyMatrix a = p;
  PolyMatrix u = with_transforms ? PolyMatrix::identity(n) : PolyMatrix{};
  PolyMatrix v = with_transforms ? PolyMatrix::identity(n) : PolyMatrix{};

  auto find_pivot = [&](std::size_t t) -> std::optional<std::pair<std::size_t, std::size_t>> {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    std::size_t best_deg = 0;
    for (std::size_t i = t; i < n; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const auto d = a(i, j).degree();
        if (d && (!best || *d < best_deg)) {
          best = {i, j};
          best_deg = *d;
        }
      }
    return best;
  };

  std::size_t t = 0;
  for (; t < n; ++t) {
    bool settled = false;
    bool empty = false;
    while (!settled) {
      const auto piv = find_pivot(t);
      if (!piv) {
        empty = true;
        break;
      }
      if (piv->first != t) {
        a.swap_rows(t, piv->first);
        if (with_transforms) u.swap_rows(t, piv->first);
      }
      if (piv->second != t) {
        a.swap_cols(t, piv->second);
        if (with_transforms) v.swap_cols(t, piv->second);
      }
      if (!a(t, t).is_monic()) {
        const Rational s = 1 / a(t, t).leading();
        a.scale_row(t, s);
        if (with_transforms) u.scale_row(t, s);
      }

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a(i, t).is_zero()) continue;
        auto [q, r] = Polynomial::divmod(a(i, t), a(t, t));
        a.sub_row(i, t, q);
        if (with_transforms) u.sub_row(i, t, q);
        if (!r.is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j).is_zero()) continue;
        auto [q, r] = Polynomial::divmod(a(t, j), a(t, t));
        a.sub_col(j, t, q);
        if (with_transforms) v.sub_col(j, t, q);
        if (!r.is_zero()) clean = false;
      }
      if (!clean) continue;

      // Row and column t are cleared; enforce divisibility of the trailing block.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < n && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!a(t, t).divides(a(i, j))) {
            bad_row = i;
            break;
          }
      if (bad_row) {
        a.sub_row(t, *bad_row, Polynomial(Rational(-1)));
        if (with_transforms) u.sub_row(t, *bad_row, Polynomial(Rational(-1)));
        continue;
      }
      settled = true;
    }
    if (empty) break;
  }

  SmithForm out;
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = a(i, i);
  out.left = std::move(u);
  out.right = std::move(v);
  return out;
}

}  // namespace homsense
