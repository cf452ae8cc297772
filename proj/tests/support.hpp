#pragma once

// Test-only generators and independent reference computations.

#include <homsense/homsense.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace testing_support {

using namespace homsense;

/// Determinant by cofactor expansion along the first row.
inline Rational cofactor_det(const Matrix& a) {
  const std::size_t m = a.rows();
  if (m == 0) return 1;
  if (m == 1) return a(0, 0);
  Rational d = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (a(0, j) == 0) continue;
    Matrix minor(m - 1, m - 1);
    for (std::size_t r = 1; r < m; ++r)
      for (std::size_t c = 0, cc = 0; c < m; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    const Rational term = a(0, j) * cofactor_det(minor);
    d += (j % 2 == 0) ? term : Rational(-term);
  }
  return d;
}

/// det(yI - T) by evaluation at y = 0..m and Lagrange interpolation.
inline Polynomial interpolated_charpoly(const Matrix& t) {
  const std::size_t m = t.rows();
  std::vector<Rational> xs, ys;
  for (std::size_t k = 0; k <= m; ++k) {
    const Rational x(static_cast<long>(k));
    Matrix s = x * Matrix::identity(m) - t;
    xs.push_back(x);
    ys.push_back(m <= 6 ? cofactor_det(s) : determinant(s));
  }
  Polynomial p;
  for (std::size_t i = 0; i <= m; ++i) {
    Polynomial basis(Rational(1));
    Rational denom = 1;
    for (std::size_t j = 0; j <= m; ++j) {
      if (j == i) continue;
      basis = basis * Polynomial::linear(xs[j]);
      denom *= xs[i] - xs[j];
    }
    p = p + basis * Polynomial(ys[i] / denom);
  }
  return p;
}

/// Rank by fraction-free (Bareiss) elimination on the integer matrix
/// obtained by clearing each row's denominators.
inline std::size_t bareiss_rank(const Matrix& a) {
  std::vector<std::vector<Integer>> x(a.rows(), std::vector<Integer>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den().get_mpz_t());
    for (std::size_t j = 0; j < a.cols(); ++j) x[i][j] = a(i, j).get_num() * (l / a(i, j).get_den());
  }
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && x[p][c] == 0) ++p;
    if (p == a.rows()) continue;
    std::swap(x[p], x[r]);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j) x[i][j] = (x[r][c] * x[i][j] - x[i][c] * x[r][j]) / prev;
      x[i][c] = 0;
    }
    prev = x[r][c];
    ++r;
  }
  return r;
}

struct Block {
  Rational lambda;
  std::size_t size;
};

inline Matrix jordan_matrix(const std::vector<Block>& blocks) {
  std::size_t m = 0;
  for (const auto& b : blocks) m += b.size;
  Matrix j(m, m);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size; ++i) {
      j(off + i, off + i) = b.lambda;
      if (i + 1 < b.size) j(off + i, off + i + 1) = 1;
    }
    off += b.size;
  }
  return j;
}

/// Product of random elementary integer matrices: determinant +-1.
inline Matrix random_unimodular(std::size_t m, Rng& rng, int steps = 0) {
  Matrix s = Matrix::identity(m);
  if (m < 2) return s;
  if (steps == 0) steps = static_cast<int>(3 * m);
  for (int k = 0; k < steps; ++k) {
    const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(m) - 1));
    auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(m) - 2));
    if (j >= i) ++j;
    const Rational f(static_cast<long>(rng.uniform(-2, 2)));
    for (std::size_t c = 0; c < m; ++c) s(i, c) += f * s(j, c);
  }
  return s;
}

inline Matrix conjugate(const Matrix& j, const Matrix& s) { return s * j * inverse(s); }

/// Random Jordan structure on dimension m with eigenvalues from `values`.
inline std::vector<Block> random_blocks(std::size_t m, Rng& rng, const std::vector<long>& values = {-2, -1, 0, 1, 2, 3}) {
  std::vector<Block> out;
  std::size_t left = m;
  while (left > 0) {
    const auto size = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(std::min<std::size_t>(left, 3))));
    const long v = values[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(values.size()) - 1))];
    out.push_back({Rational(v), size});
    left -= size;
  }
  return out;
}

inline std::map<Rational, std::size_t> block_counts(const std::vector<Block>& blocks) {
  std::map<Rational, std::size_t> c;
  for (const auto& b : blocks) ++c[b.lambda];
  return c;
}

inline std::size_t max_count(const std::vector<Block>& blocks) {
  std::size_t mu = 0;
  for (const auto& [l, k] : block_counts(blocks)) mu = std::max(mu, k);
  return mu;
}

inline Matrix random_rank_matrix(std::size_t m, std::size_t r, Rng& rng, std::int64_t bound = 3) {
  return rng.integer_matrix(m, r, bound) * rng.integer_matrix(r, m, bound);
}

inline Matrix signed_cycle_matrix(const std::vector<int>& signs) {
  const std::size_t l = signs.size();
  std::vector<std::size_t> perm(l);
  for (std::size_t i = 0; i < l; ++i) perm[i] = (i + 1) % l;
  return SignedPermutation(perm, signs).matrix();
}

enum class Regime { boundary, half, general };

struct ConstructInstance {
  Matrix t;
  std::size_t n = 0;
  std::vector<Block> blocks;
};

/// Random conjugated Jordan form meeting the hypotheses of one constructor.
inline ConstructInstance random_construct_instance(Regime regime, Rng& rng, std::size_t max_m = 10) {
  for (;;) {
    ConstructInstance out;
    std::size_t m = 0;
    if (regime == Regime::general) {
      m = static_cast<std::size_t>(rng.uniform(2, static_cast<std::int64_t>(max_m)));
      out.n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(m / 2)));
      out.blocks = random_blocks(m, rng, rng.uniform(0, 1) ? std::vector<long>{1, 2} : std::vector<long>{-2, -1, 0, 1, 2, 3});
      if (max_count(out.blocks) > m - out.n) continue;
    } else {
      out.n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_m / 2)));
      m = 2 * out.n;
      if (regime == Regime::half) {
        out.blocks = random_blocks(m, rng, rng.uniform(0, 1) ? std::vector<long>{1, 2} : std::vector<long>{-1, 0, 1, 2, 3});
        if (max_count(out.blocks) > out.n) continue;
      } else {
        // n blocks of the pivotal eigenvalue, the rest elsewhere
        const Rational pivot(static_cast<long>(rng.uniform(-2, 3)));
        std::size_t used = 0;
        for (std::size_t k = 0; k < out.n; ++k) {
          const auto room = m - used - (out.n - k - 1);
          const auto size = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(std::min<std::size_t>(room, 3))));
          out.blocks.push_back({pivot, size});
          used += size;
        }
        std::vector<long> others;
        for (long v = -3; v <= 4; ++v)
          if (Rational(v) != pivot) others.push_back(v);
        for (auto& b : random_blocks(m - used, rng, others)) out.blocks.push_back(b);
      }
    }
    std::shuffle(out.blocks.begin(), out.blocks.end(), std::mt19937_64(rng.next()));
    out.t = conjugate(jordan_matrix(out.blocks), random_unimodular(m, rng));
    return out;
  }
}

/// Oracle re-validation of a certified verdict (subspace collisions on a
/// random V, resampled before declaring a violation).
inline SoundnessResult revalidate(const Matrix& t1, const Matrix& t2, std::size_t n, SignMode mode, bool point_mode,
                                  std::uint64_t seed) {
  SensingInstance inst;
  inst.m = t1.rows();
  inst.n = n;
  inst.kind = ClassKind::endo_pair;
  inst.t1 = t1;
  inst.t2 = t2;
  inst.sign_mode = mode;
  inst.point_mode = point_mode;
  inst.v_basis = random_subspace(inst.m, n, 1'000'000, seed);
  OracleOptions opts;
  opts.seed = seed;
  return oracle_with_resampling(inst, opts, 1'000'000);
}

inline SoundnessResult revalidate_prop5(const Matrix& t, std::size_t n, SignMode mode, std::uint64_t seed = 1) {
  return revalidate(t, Matrix::identity(t.rows()), n, mode, false, seed);
}

inline SoundnessResult revalidate_thm1(const Matrix& t1, const Matrix& t2, std::size_t n, std::uint64_t seed = 1) {
  return revalidate(t1, t2, n, SignMode::plain, false, seed);
}

inline SoundnessResult revalidate_thm2(const SignedPermutation& pi1, const SignedPermutation& pi2, const CoordinateProjection& rho1,
                                       const CoordinateProjection& rho2, std::size_t n, SignMode mode, std::uint64_t seed = 1) {
  return revalidate(rho1.matrix() * pi1.matrix(), rho2.matrix() * pi2.matrix(), n, mode, false, seed);
}

inline SoundnessResult revalidate_prop4(const Matrix& t1, const Matrix& t2, std::size_t n, std::uint64_t seed = 1) {
  return revalidate(t1, t2, n, SignMode::plain, true, seed);
}

inline std::vector<std::size_t> random_permutation(std::size_t m, Rng& rng) {
  std::vector<std::size_t> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = i;
  for (std::size_t i = m; i > 1; --i) std::swap(p[i - 1], p[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1))]);
  return p;
}

inline std::vector<int> random_signs(std::size_t m, Rng& rng) {
  std::vector<int> s(m);
  for (auto& x : s) x = rng.sign();
  return s;
}

}  // namespace testing_support
