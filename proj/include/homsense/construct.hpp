#pragma once

// Explicit n-dimensional subspaces V with dim(V + T V) = 2n.
//
// All three builders work on a Jordan decomposition over Q (rational spectrum
// only) and return linear combinations of Jordan basis vectors. Summands are
// manipulated abstractly: restricting a summand to w_1, ..., w_k keeps it
// T-invariant, so truncation and removal stay inside the Jordan picture.

#include <homsense/errors.hpp>
#include <homsense/matrix.hpp>
#include <homsense/structure.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace homsense {

struct WitnessSubspace {
  Matrix basis;                      // m x n, full column rank
  std::size_t certificate_rank = 0;  // rank([A | T A])
};

/// Exact rank of [A | T A].
inline std::size_t verify_witness(const Matrix& t, const Matrix& a) {
  if (!t.is_square() || a.rows() != t.rows())
    throw std::invalid_argument("verify_witness: T is " + t.shape() + ", A is " + a.shape());
  if (a.cols() == 0) return 0;
  return rank(hcat(a, t * a));
}

namespace construct_detail {

using Summands = std::vector<CyclicSummand>;

inline Vector add(const Vector& a, const Vector& b) {
  Vector out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

inline std::size_t total_dim(const Summands& s) {
  std::size_t d = 0;
  for (const auto& c : s) d += c.dimension();
  return d;
}

/// Eigenvalue -> number of summands (its geometric multiplicity), ascending.
inline std::map<Rational, std::size_t> multiplicities(const Summands& s) {
  std::map<Rational, std::size_t> out;
  for (const auto& c : s) ++out[c.eigenvalue];
  return out;
}

inline std::size_t max_multiplicity(const Summands& s) {
  std::size_t mu = 0;
  for (const auto& [lam, k] : multiplicities(s)) mu = std::max(mu, k);
  return mu;
}

inline CyclicSummand truncated(const CyclicSummand& c, std::size_t keep) {
  return {c.eigenvalue, std::vector<Vector>(c.chain.begin(), c.chain.begin() + static_cast<std::ptrdiff_t>(keep))};
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("construction invariant violated: " + what);
}

/// Pairs vs[offset + j] with the j-th vector of the concatenated Jordan bases
/// of `others` (each basis in order w_1, ..., w_d).
inline void pair_with_other_summands(const std::vector<Vector>& vs, std::size_t offset, const Summands& others,
                                     std::vector<Vector>& out) {
  std::size_t j = offset;
  for (const auto& c : others)
    for (const auto& w : c.chain) {
      require(j < vs.size(), "more vectors from other eigenvalues than unused eigenvectors");
      out.push_back(add(vs[j++], w));
    }
  require(j == vs.size(), "unused eigenvectors left after pairing");
}

/// Boundary case: total dimension 2n and some eigenvalue with exactly n
/// summands.
inline std::vector<Vector> boundary(const Summands& s, std::size_t n) {
  if (n == 0) return {};
  if (total_dim(s) != 2 * n) throw HypothesisError("boundary construction needs dimension exactly 2n");
  const auto mult = multiplicities(s);
  const Rational* pivot = nullptr;
  for (const auto& [lam, k] : mult)
    if (k == n) {
      pivot = &lam;
      break;
    }
  if (!pivot) throw HypothesisError("boundary construction needs an eigenvalue of geometric multiplicity exactly n");

  Summands own;
  Summands others;
  for (const auto& c : s) (c.eigenvalue == *pivot ? own : others).push_back(c);
  std::stable_sort(own.begin(), own.end(), [](const CyclicSummand& a, const CyclicSummand& b) {
    if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
    return detail::lex_less(a.chain.back(), b.chain.back());
  });
  const std::size_t r = static_cast<std::size_t>(
      std::count_if(own.begin(), own.end(), [](const CyclicSummand& c) { return c.dimension() == 1; }));

  std::vector<Vector> u;
  if (r == 0) {
    for (const auto& c : own) {
      require(c.dimension() == 2, "r = 0 forces 2-dimensional summands");
      u.push_back(c.chain[1]);
    }
    return u;
  }

  std::vector<Vector> v;  // eigenvectors of the 1-dimensional summands
  for (std::size_t t = 0; t < r; ++t) v.push_back(own[t].chain[0]);

  // Each summand of dimension d > 1 absorbs d - 2 of the 1-dimensional ones:
  // u = w_1 + w_d, then v_p + w_k for k = 2, ..., d - 1.
  std::size_t used = 0;
  for (std::size_t t = r; t < own.size(); ++t) {
    const auto& w = own[t].chain;
    const std::size_t d = w.size();
    require(used + (d - 2) <= r, "budget d - 2 <= r - (previously absorbed)");
    u.push_back(add(w.front(), w.back()));
    for (std::size_t k = 1; k + 1 < d; ++k) u.push_back(add(v[used++], w[k]));
  }
  pair_with_other_summands(v, used, others, u);
  require(u.size() == n, "boundary construction produced " + std::to_string(u.size()) + " vectors");
  return u;
}

/// Total dimension 2n, every eigenvalue with at most n summands.
inline std::vector<Vector> half(const Summands& s, std::size_t n) {
  if (n == 0) return {};
  if (total_dim(s) != 2 * n) throw HypothesisError("half construction needs dimension exactly 2n");
  const auto mult = multiplicities(s);
  bool at_boundary = false;
  for (const auto& [lam, k] : mult) {
    if (k > n) throw HypothesisError("half construction needs every geometric multiplicity <= n");
    at_boundary = at_boundary || k == n;
  }
  if (at_boundary) return boundary(s, n);

  Summands rest;
  Vector u;
  // Two 1-dimensional summands of distinct eigenvalues: u = v1 + v2.
  for (std::size_t a = 0; a < s.size() && u.empty(); ++a) {
    if (s[a].dimension() != 1) continue;
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      if (s[b].dimension() != 1 || s[b].eigenvalue == s[a].eigenvalue) continue;
      u = add(s[a].chain[0], s[b].chain[0]);
      for (std::size_t k = 0; k < s.size(); ++k)
        if (k != a && k != b) rest.push_back(s[k]);
      break;
    }
  }
  // Otherwise peel the top two vectors of a summand of dimension d > 1: u = w_d.
  if (u.empty()) {
    auto it = std::find_if(s.begin(), s.end(), [](const CyclicSummand& c) { return c.dimension() > 1; });
    require(it != s.end(), "some summand has dimension > 1");
    u = it->chain.back();
    for (auto jt = s.begin(); jt != s.end(); ++jt) {
      if (jt != it)
        rest.push_back(*jt);
      else if (jt->dimension() > 2)
        rest.push_back(truncated(*jt, jt->dimension() - 2));
    }
  }
  auto out = half(rest, n - 1);
  out.push_back(std::move(u));
  return out;
}

/// Total dimension m >= 2n, every eigenvalue with at most m - n summands.
/// Truncates to a 2n-dimensional invariant subspace with multiplicities <= n.
inline std::vector<Vector> general(Summands s, std::size_t n) {
  if (n == 0) return {};
  std::size_t m = total_dim(s);
  if (m < 2 * n) throw HypothesisError("general construction needs m >= 2n");
  for (const auto& [lam, k] : multiplicities(s))
    if (k > m - n) throw HypothesisError("general construction needs every geometric multiplicity <= m - n");
  std::size_t c = m - 2 * n;
  if (c == 0) return half(s, n);

  const std::size_t mu = max_multiplicity(s);
  const bool all_lines = std::all_of(s.begin(), s.end(), [](const CyclicSummand& x) { return x.dimension() == 1; });
  Summands reduced;

  if (mu <= n) {
    if (all_lines && mu == 1) {
      reduced.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(2 * n));
    } else if (auto it = std::find_if(s.begin(), s.end(), [&](const CyclicSummand& x) { return x.dimension() >= c; });
               it != s.end()) {
      for (auto jt = s.begin(); jt != s.end(); ++jt) {
        if (jt != it)
          reduced.push_back(*jt);
        else if (jt->dimension() > c)
          reduced.push_back(truncated(*jt, jt->dimension() - c));
      }
    } else {
      // Shortest family (largest summands first) whose dimensions reach c + l;
      // its smallest member shrinks to l dimensions, the others are dropped.
      std::vector<std::size_t> order(s.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s[a].dimension() > s[b].dimension(); });
      std::size_t acc = 0;
      std::size_t beta = 0;
      while (acc < c) acc += s[order[beta++]].dimension();
      const std::size_t ell = acc - c;
      const std::size_t smallest = order[beta - 1];
      require(s[smallest].dimension() >= ell, "minimal family: smallest member has dimension >= l");
      std::vector<bool> drop(s.size(), false);
      for (std::size_t k = 0; k < beta; ++k) drop[order[k]] = true;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (!drop[i])
          reduced.push_back(s[i]);
        else if (i == smallest && ell > 0)
          reduced.push_back(truncated(s[i], ell));
      }
    }
    return half(reduced, n);
  }

  // mu > n: one eigenvalue with n + c1 summands, 0 < c1 <= c.
  Rational pivot;
  for (const auto& [lam, k] : multiplicities(s))
    if (k == mu) {
      pivot = lam;
      break;
    }
  const std::size_t c1 = mu - n;
  for (;;) {
    if (c1 == c) {
      Summands own;
      for (const auto& x : s)
        if (x.eigenvalue == pivot) own.push_back(x);
      std::stable_sort(own.begin(), own.end(),
                       [](const CyclicSummand& a, const CyclicSummand& b) { return a.dimension() < b.dimension(); });
      const auto lines = static_cast<std::size_t>(
          std::count_if(own.begin(), own.end(), [](const CyclicSummand& x) { return x.dimension() == 1; }));
      require(lines >= c, "c <= r (enough 1-dimensional summands to drop)");
      reduced.assign(own.begin() + static_cast<std::ptrdiff_t>(c), own.end());
      for (const auto& x : s)
        if (x.eigenvalue != pivot) reduced.push_back(x);
      break;
    }
    if (std::all_of(s.begin(), s.end(), [](const CyclicSummand& x) { return x.dimension() == 1; })) {
      std::size_t own = 0, other = 0;
      for (const auto& x : s) {
        if (x.eigenvalue == pivot && own < n) {
          reduced.push_back(x);
          ++own;
        } else if (x.eigenvalue != pivot && other < n) {
          reduced.push_back(x);
          ++other;
        }
      }
      require(own == n && other == n, "n summands of the pivotal eigenvalue and n others");
      break;
    }
    auto it = std::find_if(s.begin(), s.end(), [](const CyclicSummand& x) { return x.dimension() > 1; });
    *it = truncated(*it, it->dimension() - 1);
    --c;
    --m;
  }
  return half(reduced, n);
}

inline WitnessSubspace finish(const Matrix& t, const std::vector<Vector>& u, std::size_t n) {
  WitnessSubspace w;
  w.basis = Matrix::from_columns(u, t.rows());
  w.certificate_rank = verify_witness(t, w.basis);
  require(w.certificate_rank == 2 * n, "rank([A | TA]) = " + std::to_string(w.certificate_rank) + ", expected " + std::to_string(2 * n));
  return w;
}

inline void require_square(const Matrix& t) {
  if (!t.is_square()) throw std::invalid_argument("witness construction needs a square matrix, got " + t.shape());
}

}  // namespace construct_detail

/// m = 2n and some eigenvalue of geometric multiplicity exactly n.
inline WitnessSubspace construct_boundary(const Matrix& t, std::size_t n) {
  construct_detail::require_square(t);
  if (t.rows() != 2 * n) throw HypothesisError("boundary construction needs m = 2n");
  return construct_detail::finish(t, construct_detail::boundary(jordan_decomposition(t), n), n);
}

/// m = 2n and every geometric multiplicity at most n.
inline WitnessSubspace construct_half(const Matrix& t, std::size_t n) {
  construct_detail::require_square(t);
  if (t.rows() != 2 * n) throw HypothesisError("half construction needs m = 2n");
  return construct_detail::finish(t, construct_detail::half(jordan_decomposition(t), n), n);
}

/// m >= 2n and every geometric multiplicity at most m - n.
inline WitnessSubspace construct_general(const Matrix& t, std::size_t n) {
  construct_detail::require_square(t);
  if (t.rows() < 2 * n) throw HypothesisError("general construction needs m >= 2n");
  return construct_detail::finish(t, construct_detail::general(jordan_decomposition(t), n), n);
}

}  // namespace homsense
