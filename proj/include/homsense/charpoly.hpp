#pragma once

#include <homsense/matrix.hpp>
#include <homsense/polynomial.hpp>

#include <stdexcept>
#include <utility>

namespace homsense {

/// det(yI - T), computed by similarity reduction to upper Hessenberg form
/// followed by the standard three-term recurrence on leading principal
/// minors. The result is monic of degree dim T.
inline Polynomial charpoly(const Matrix& t) {
  if (!t.is_square()) throw std::invalid_argument("charpoly of non-square matrix " + t.shape());
  const std::size_t n = t.rows();
  Matrix h = t;
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t piv = m;
    while (piv < n && h(piv, m - 1) == 0) ++piv;
    if (piv == n) continue;
    if (piv != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(m, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, m));
    }
    const Rational inv = 1 / h(m, m - 1);
    for (std::size_t i = m + 1; i < n; ++i) {
      if (h(i, m - 1) == 0) continue;
      const Rational u = h(i, m - 1) * inv;
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= u * h(m, j);
      for (std::size_t r = 0; r < n; ++r) h(r, m) += u * h(r, i);
    }
  }

  std::vector<Polynomial> p(n + 1);
  p[0] = Polynomial(Rational(1));
  for (std::size_t m = 1; m <= n; ++m) {
    p[m] = Polynomial::linear(h(m - 1, m - 1)) * p[m - 1];
    Rational t_prod = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t_prod *= h(m - i, m - i - 1);
      if (t_prod == 0) break;
      const Rational coeff = t_prod * h(m - i - 1, m - 1);
      if (coeff != 0) p[m] -= Polynomial(coeff) * p[m - i - 1];
    }
  }
  return p[n];
}

}  // namespace homsense
