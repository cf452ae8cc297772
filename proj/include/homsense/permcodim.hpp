#pragma once

// Signed permutations, coordinate projections, and the zero-forcing
// codimension count bounding the eigen-locus of rho2 rho1 pi against rho2.

#include <homsense/charpoly.hpp>
#include <homsense/matrix.hpp>
#include <homsense/roots.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace homsense {

/// Sigma * Pi acting by e_i -> signs[perm[i]] * e_{perm[i]}. Indices are 0-based.
class SignedPermutation {
 public:
  SignedPermutation() = default;
  explicit SignedPermutation(std::vector<std::size_t> perm) : perm_(std::move(perm)), signs_(perm_.size(), 1) { validate(); }
  SignedPermutation(std::vector<std::size_t> perm, std::vector<int> signs) : perm_(std::move(perm)), signs_(std::move(signs)) {
    validate();
  }

  static SignedPermutation identity(std::size_t m) {
    std::vector<std::size_t> p(m);
    std::iota(p.begin(), p.end(), 0);
    return SignedPermutation(std::move(p));
  }
  /// The cycle c[0] -> c[1] -> ... -> c[last] -> c[0] on [m], identity elsewhere.
  static SignedPermutation from_cycles(std::size_t m, const std::vector<std::vector<std::size_t>>& cycles) {
    std::vector<std::size_t> p(m);
    std::iota(p.begin(), p.end(), 0);
    for (const auto& c : cycles)
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] >= m) throw std::invalid_argument("cycle entry out of range");
        p[c[k]] = c[(k + 1) % c.size()];
      }
    return SignedPermutation(std::move(p));
  }

  std::size_t size() const { return perm_.size(); }
  std::size_t operator()(std::size_t i) const { return perm_[i]; }
  const std::vector<std::size_t>& images() const { return perm_; }
  const std::vector<int>& signs() const { return signs_; }
  bool has_negative_sign() const { return std::any_of(signs_.begin(), signs_.end(), [](int s) { return s < 0; }); }

  SignedPermutation with_signs(std::vector<int> signs) const { return SignedPermutation(perm_, std::move(signs)); }

  SignedPermutation inverse() const {
    // (Sigma Pi)^{-1} = Pi^{-1} Sigma: e_j -> signs[j] e_{perm^{-1}(j)}
    std::vector<std::size_t> inv(size());
    std::vector<int> s(size());
    for (std::size_t i = 0; i < size(); ++i) inv[perm_[i]] = i;
    for (std::size_t j = 0; j < size(); ++j) s[inv[j]] = signs_[j];
    return SignedPermutation(std::move(inv), std::move(s));
  }

  /// Matrix product (*this) * b: apply b first.
  SignedPermutation compose(const SignedPermutation& b) const {
    if (b.size() != size()) throw std::invalid_argument("signed permutation size mismatch");
    std::vector<std::size_t> p(size());
    std::vector<int> s(size());
    for (std::size_t i = 0; i < size(); ++i) {
      const std::size_t mid = b.perm_[i];
      const std::size_t dst = perm_[mid];
      p[i] = dst;
      s[dst] = signs_[dst] * b.signs_[mid];
    }
    return SignedPermutation(std::move(p), std::move(s));
  }

  Matrix matrix() const {
    Matrix out(size(), size());
    for (std::size_t i = 0; i < size(); ++i) out(perm_[i], i) = signs_[perm_[i]];
    return out;
  }

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;

 private:
  void validate() const {
    if (signs_.size() != perm_.size()) throw std::invalid_argument("sign vector length differs from permutation size");
    std::vector<bool> seen(perm_.size(), false);
    for (auto v : perm_) {
      if (v >= perm_.size() || seen[v]) throw std::invalid_argument("image array is not a bijection");
      seen[v] = true;
    }
    for (int s : signs_)
      if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
  }

  std::vector<std::size_t> perm_;
  std::vector<int> signs_;
};

/// Keeps the coordinates in `kept` and zeroes the rest.
class CoordinateProjection {
 public:
  CoordinateProjection() = default;
  CoordinateProjection(std::size_t m, std::vector<std::size_t> kept) : m_(m), kept_(std::move(kept)) {
    std::sort(kept_.begin(), kept_.end());
    if (std::adjacent_find(kept_.begin(), kept_.end()) != kept_.end())
      throw std::invalid_argument("repeated kept index");
    if (!kept_.empty() && kept_.back() >= m_) throw std::invalid_argument("kept index out of range");
  }
  static CoordinateProjection identity(std::size_t m) {
    std::vector<std::size_t> k(m);
    std::iota(k.begin(), k.end(), 0);
    return {m, std::move(k)};
  }
  static CoordinateProjection from_mask(std::size_t m, std::uint64_t mask) {
    std::vector<std::size_t> k;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1U) k.push_back(i);
    return {m, std::move(k)};
  }

  std::size_t size() const { return m_; }
  std::size_t rank() const { return kept_.size(); }
  const std::vector<std::size_t>& kept() const { return kept_; }
  bool keeps(std::size_t i) const { return std::binary_search(kept_.begin(), kept_.end(), i); }
  std::uint64_t mask() const {
    std::uint64_t b = 0;
    for (auto i : kept_) b |= std::uint64_t{1} << i;
    return b;
  }

  Matrix matrix() const {
    Matrix out(m_, m_);
    for (auto i : kept_) out(i, i) = 1;
    return out;
  }

  friend bool operator==(const CoordinateProjection&, const CoordinateProjection&) = default;

 private:
  std::size_t m_ = 0;
  std::vector<std::size_t> kept_;
};

struct CycleDecomposition {
  std::vector<std::vector<std::size_t>> cycles;  // each starts at its minimum; ordered by minimum
};

inline CycleDecomposition cycle_decomposition(const SignedPermutation& pi) {
  CycleDecomposition out;
  std::vector<bool> seen(pi.size(), false);
  for (std::size_t s = 0; s < pi.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> c;
    for (std::size_t j = s; !seen[j]; j = pi(j)) {
      seen[j] = true;
      c.push_back(j);
    }
    out.cycles.push_back(std::move(c));
  }
  return out;
}

struct SignedCycleCheck {
  Polynomial charpoly;  // y^l - prod(signs)
  bool distinct = false;
};

/// A single signed l-cycle has characteristic polynomial y^l - prod(signs),
/// which is squarefree in characteristic zero.
inline SignedCycleCheck signed_cycle_eigen_check(std::size_t length, const std::vector<int>& signs) {
  if (length == 0 || signs.size() != length) throw std::invalid_argument("signed cycle needs length >= 1 and one sign per entry");
  int prod = 1;
  for (int s : signs) {
    if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
    prod *= s;
  }
  SignedCycleCheck out;
  out.charpoly = Polynomial::monomial(1, length) - Polynomial(Rational(prod));
  out.distinct = is_squarefree(out.charpoly);
  return out;
}

struct CodimAccount {
  std::size_t m = 0;
  std::vector<std::size_t> kept2;  // I_2
  std::vector<std::size_t> domino;
  std::vector<std::size_t> fixed;
  std::vector<std::size_t> cycles;      // union of complete cycles of length >= 2
  std::vector<std::size_t> incomplete;
  std::vector<std::size_t> complete_cycle_sizes;
  std::size_t codim_bound = 0;
};

/// Partitions I_2 = kept(rho2) for the pair (rho2 rho1 pi, rho2):
///  1. domino: seeds I_2 ∩ ker(rho1), each zero pushed forward along its
///     pi-orbit while the next index stays in I_2;
///  2. fixed: fixed points of pi among the rest;
///  3. cycles: pi-cycles of length >= 2 lying entirely in the rest;
///  4. incomplete: what remains.
/// codim_bound = #domino + #fixed + sum(#C - 1) + max(#incomplete - 1, 0).
inline CodimAccount codim_account(const SignedPermutation& pi, const CoordinateProjection& rho1, const CoordinateProjection& rho2) {
  const std::size_t m = pi.size();
  if (rho1.size() != m || rho2.size() != m)
    throw std::invalid_argument("size mismatch: permutation on " + std::to_string(m) + ", projections on " +
                                std::to_string(rho1.size()) + " and " + std::to_string(rho2.size()));
  std::vector<bool> in2(m, false), in1(m, false);
  for (auto i : rho2.kept()) in2[i] = true;
  for (auto i : rho1.kept()) in1[i] = true;

  std::vector<bool> zero(m, false);
  for (std::size_t seed = 0; seed < m; ++seed) {
    if (!in2[seed] || in1[seed] || zero[seed]) continue;
    zero[seed] = true;
    for (std::size_t j = seed;;) {
      const std::size_t next = pi(j);
      if (!in2[next] || zero[next]) break;
      zero[next] = true;
      j = next;
    }
  }

  CodimAccount acc;
  acc.m = m;
  acc.kept2 = rho2.kept();
  std::vector<bool> rest(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (!in2[i]) continue;
    if (zero[i])
      acc.domino.push_back(i);
    else if (pi(i) == i)
      acc.fixed.push_back(i);
    else
      rest[i] = true;
  }
  std::vector<bool> in_cycle(m, false);
  for (const auto& c : cycle_decomposition(pi).cycles) {
    if (c.size() < 2) continue;
    if (std::all_of(c.begin(), c.end(), [&](std::size_t i) { return rest[i]; })) {
      acc.complete_cycle_sizes.push_back(c.size());
      for (auto i : c) in_cycle[i] = true;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (in_cycle[i])
      acc.cycles.push_back(i);
    else if (rest[i])
      acc.incomplete.push_back(i);
  }
  std::size_t bound = acc.domino.size() + acc.fixed.size();
  for (auto s : acc.complete_cycle_sizes) bound += s - 1;
  if (acc.incomplete.size() > 1) bound += acc.incomplete.size() - 1;
  acc.codim_bound = bound;
  return acc;
}

/// m - codim_bound, an upper bound on the dimension of the eigen-locus of
/// (rho2 rho1 pi, rho2). Never exceeds m - floor(rank(rho2)/2).
inline std::size_t theorem2_bound(const SignedPermutation& pi, const CoordinateProjection& rho1, const CoordinateProjection& rho2) {
  const CodimAccount acc = codim_account(pi, rho1, rho2);
  const std::size_t bound = acc.m - acc.codim_bound;
  if (bound > acc.m - rho2.rank() / 2)
    throw std::logic_error("codimension account fell below floor(rank(rho2)/2)");
  return bound;
}

}  // namespace homsense
