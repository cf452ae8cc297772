#pragma once

// Brute-force ground truth for homomorphic sensing at desk scale: for a
// subspace V = im(A) and every pair (tau1, tau2) in a class, solve
// tau1(A xi1) = tau2(A xi2) exactly and flag solutions with xi1 != xi2
// (xi1 != +-xi2 in plus_minus mode).

#include <homsense/certify.hpp>
#include <homsense/matrix.hpp>
#include <homsense/permcodim.hpp>
#include <homsense/random.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

namespace homsense {

/// m x n integer matrix with entries uniform in [-bound, bound], resampled
/// until full column rank.
inline Matrix random_subspace(std::size_t m, std::size_t n, std::int64_t bound, std::uint64_t seed) {
  if (n > m) throw std::invalid_argument("random_subspace needs n <= m");
  if (bound < 1) throw std::invalid_argument("random_subspace needs bound >= 1");
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix a = rng.integer_matrix(m, n, bound);
    if (rank(a) == n) return a;
  }
  throw std::runtime_error("random_subspace: no full-rank sample in 64 attempts");
}

struct Violation {
  std::string tau1;
  std::string tau2;
  Vector v1;
  Vector v2;
};

namespace sensing_detail {

inline bool halves_equal(const Vector& x, std::size_t n, int sign) {
  for (std::size_t i = 0; i < n; ++i)
    if (sign > 0 ? x[i] != x[n + i] : x[i] != -x[n + i]) return false;
  return true;
}

/// For the m x 2n system M (xi1; xi2) = 0: a null vector outside the allowed
/// set, or nothing when the whole null space is allowed.
inline std::optional<Vector> offending_null_vector(const Matrix& system, std::size_t n, SignMode mode) {
  const Matrix k = kernel_basis(system);
  if (k.cols() == 0) return std::nullopt;
  std::optional<Vector> diag, anti;
  for (std::size_t c = 0; c < k.cols(); ++c) {
    Vector x = k.column(c);
    const bool d = halves_equal(x, n, 1);
    const bool a = mode == SignMode::plus_minus && halves_equal(x, n, -1);
    if (!d && !a) return x;
    if (d && !diag) diag = std::move(x);
    else if (a && !anti) anti = std::move(x);
  }
  // A subspace inside the union of two subspaces lies in one of them.
  if (diag && anti) {
    Vector s = *diag;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += (*anti)[i];
    return s;
  }
  return std::nullopt;
}

inline std::pair<Vector, Vector> to_points(const Matrix& a, const Vector& x) {
  const std::size_t n = a.cols();
  const Vector xi1(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
  const Vector xi2(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
  return {a * xi1, a * xi2};
}

}  // namespace sensing_detail

/// Violating pairs (v1, v2) = (A xi1, A xi2) with T1 v1 = T2 v2: at most one
/// representative; empty iff the null space of [T1 A | -T2 A] is allowed.
inline std::vector<std::pair<Vector, Vector>> collision_solve(const Matrix& t1, const Matrix& t2, const Matrix& a, SignMode mode) {
  if (!t1.is_square() || t2.rows() != t1.rows() || t2.cols() != t1.cols() || a.rows() != t1.cols())
    throw std::invalid_argument("collision_solve: T1 " + t1.shape() + ", T2 " + t2.shape() + ", A " + a.shape());
  const auto x = sensing_detail::offending_null_vector(hcat(t1 * a, -(t2 * a)), a.cols(), mode);
  if (!x) return {};
  return {sensing_detail::to_points(a, *x)};
}

enum class ClassKind { perm, signed_perm, proj_perm, signed_proj_perm, endo_pair };

inline const char* to_string(ClassKind k) {
  switch (k) {
    case ClassKind::perm: return "perm";
    case ClassKind::signed_perm: return "signed-perm";
    case ClassKind::proj_perm: return "proj-perm";
    case ClassKind::signed_proj_perm: return "signed-proj-perm";
    case ClassKind::endo_pair: return "endo-pair";
  }
  return "?";
}

inline bool is_signed(ClassKind k) { return k == ClassKind::signed_perm || k == ClassKind::signed_proj_perm; }
inline bool has_projections(ClassKind k) { return k == ClassKind::proj_perm || k == ClassKind::signed_proj_perm; }

struct SensingInstance {
  std::size_t m = 0;
  std::size_t n = 0;
  Matrix v_basis;  // m x n, full column rank
  ClassKind kind = ClassKind::perm;
  std::size_t r1 = 0;  // minimal rank of rho1 (projection classes)
  std::size_t r2 = 0;  // minimal rank of rho2
  Matrix t1, t2;       // endo_pair only
  SignMode sign_mode = SignMode::plain;
  bool point_mode = false;  // endo_pair: only general points v in V
};

struct OracleOptions {
  std::uint64_t budget = 50'000'000;  // maximal number of (tau1, tau2) pairs
  std::size_t sign_samples = 10;      // sign patterns when full enumeration exceeds the budget
  std::size_t points = 10;            // general points per V in point mode
  std::uint64_t seed = 0;
  std::size_t jobs = 0;               // 0: hardware concurrency
};

struct CollisionReport {
  std::uint64_t pairs_checked = 0;
  std::vector<Violation> violations;
  std::uint64_t sign_patterns = 1;
  bool signs_sampled = false;
};

/// Thrown before any enumeration when the class is larger than the budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t cardinality, std::uint64_t budget)
      : std::runtime_error("class cardinality " + std::to_string(cardinality) + " exceeds budget " + std::to_string(budget)),
        cardinality_(cardinality) {}
  std::uint64_t cardinality() const { return cardinality_; }

 private:
  std::uint64_t cardinality_;
};

namespace sensing_detail {

inline std::vector<std::vector<std::size_t>> all_permutations(std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> p(m);
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::vector<std::uint32_t> masks_of_rank_at_least(std::size_t m, std::size_t r) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask)
    if (static_cast<std::size_t>(__builtin_popcount(mask)) >= r) out.push_back(mask);
  return out;
}

inline std::uint64_t factorial(std::size_t m) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= m; ++i) f *= i;
  return f;
}

/// Lexicographic rank of a permutation.
inline std::uint32_t perm_rank(const std::vector<std::size_t>& p) {
  std::uint32_t r = 0;
  const std::size_t m = p.size();
  for (std::size_t i = 0; i < m; ++i) {
    std::uint32_t smaller = 0;
    for (std::size_t j = i + 1; j < m; ++j) smaller += p[j] < p[i];
    r = r * static_cast<std::uint32_t>(m - i) + smaller;
  }
  return r;
}

inline std::string describe(const std::vector<std::size_t>& perm, const std::vector<int>& signs, std::uint32_t kept,
                            bool with_signs, bool with_kept) {
  std::string s = "pi=[";
  for (std::size_t i = 0; i < perm.size(); ++i) s += (i ? "," : "") + std::to_string(perm[i]);
  s += "]";
  if (with_signs) {
    s += " signs=[";
    for (std::size_t i = 0; i < signs.size(); ++i) s += std::string(i ? "," : "") + (signs[i] > 0 ? "+" : "-");
    s += "]";
  }
  if (with_kept) {
    s += " kept=[";
    bool first = true;
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (kept >> i & 1U) {
        s += (first ? "" : ",") + std::to_string(i);
        first = false;
      }
    s += "]";
  }
  return s;
}

struct SignPattern {
  std::vector<int> s1, s2;
};

/// Solves every pair with pi1 in [begin, end) of the lexicographic order;
/// output order depends only on that range.
///
/// With P = Sigma Pi, multiplying rho1 P1 v1 = rho2 P2 v2 by P2^{-1} gives
/// rho_a psi v1 = rho_b v2 with psi = P2^{-1} P1 and rho_a, rho_b keeping
/// pi2^{-1}(K1), pi2^{-1}(K2); the solution set is unchanged. Only the signs
/// of psi on the rows kept by both matter, so systems are memoized by
/// (psi, those signs, rho_a, rho_b).
inline void enumerate_range(const SensingInstance& inst, const std::vector<std::vector<std::size_t>>& perms,
                            const std::vector<std::uint32_t>& masks1, const std::vector<std::uint32_t>& masks2,
                            const std::vector<SignPattern>& patterns, std::size_t begin, std::size_t end,
                            std::vector<Violation>& out) {
  const std::size_t m = inst.m, n = inst.n;
  const Matrix& a = inst.v_basis;
  const bool show_signs = is_signed(inst.kind), show_kept = has_projections(inst.kind);
  std::unordered_map<std::uint64_t, std::int32_t> memo;  // key -> index into found (or -1)
  std::vector<Vector> found;
  std::vector<std::size_t> psi(m), psi_inv(m), inv2(m);
  std::vector<int> psi_sign(m);
  std::vector<std::uint32_t> image_mask(std::size_t{1} << m);

  for (std::size_t i1 = begin; i1 < end; ++i1)
    for (const auto& pat : patterns) {
      const auto& p1 = perms[i1];
      for (const auto& p2 : perms) {
        for (std::size_t i = 0; i < m; ++i) inv2[p2[i]] = i;
        for (std::size_t i = 0; i < m; ++i) {
          const std::size_t mid = p1[i];
          const std::size_t dst = inv2[mid];
          psi[i] = dst;
          psi_inv[dst] = i;
          psi_sign[dst] = pat.s1[mid] * pat.s2[mid];
        }
        const std::uint64_t prank = perm_rank(psi);
        std::uint32_t neg = 0;
        for (std::size_t d = 0; d < m; ++d)
          if (psi_sign[d] < 0) neg |= 1U << d;
        for (std::uint32_t mask = 0; mask < image_mask.size(); ++mask) {
          std::uint32_t im = 0;
          for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1U) im |= 1U << inv2[i];
          image_mask[mask] = im;
        }
        for (std::uint32_t k1 : masks1) {
          const std::uint32_t ka = image_mask[k1];
          for (std::uint32_t k2 : masks2) {
            const std::uint32_t kb = image_mask[k2];
            const std::uint64_t key = (((prank << m | (neg & ka & kb)) << m | ka) << m) | kb;
            auto [it, fresh] = memo.try_emplace(key, -1);
            if (fresh) {
              Matrix sys(m, 2 * n);
              for (std::size_t d = 0; d < m; ++d) {
                if (ka >> d & 1U) {
                  const std::size_t src = psi_inv[d];
                  for (std::size_t j = 0; j < n; ++j) sys(d, j) = psi_sign[d] < 0 ? Rational(-a(src, j)) : a(src, j);
                }
                if (kb >> d & 1U)
                  for (std::size_t j = 0; j < n; ++j) sys(d, n + j) = -a(d, j);
              }
              if (auto x = offending_null_vector(sys, n, inst.sign_mode)) {
                it->second = static_cast<std::int32_t>(found.size());
                found.push_back(std::move(*x));
              }
            }
            if (it->second < 0) continue;
            auto [v1, v2] = to_points(a, found[static_cast<std::size_t>(it->second)]);
            out.push_back({describe(p1, pat.s1, k1, show_signs, show_kept), describe(p2, pat.s2, k2, show_signs, show_kept),
                           std::move(v1), std::move(v2)});
          }
        }
      }
    }
}

inline CollisionReport endo_pair_report(const SensingInstance& inst, const OracleOptions& opts) {
  CollisionReport rep;
  const Matrix& a = inst.v_basis;
  if (!inst.point_mode) {
    rep.pairs_checked = 1;
    for (auto& [v1, v2] : collision_solve(inst.t1, inst.t2, a, inst.sign_mode)) rep.violations.push_back({"T1", "T2", v1, v2});
    return rep;
  }
  // tau_i(v) = tau_j(v') for a general v = A xi: solve T_j A eta = T_i A xi.
  Rng rng(mix_seed(opts.seed, 0x70));
  const Matrix t1a = inst.t1 * a, t2a = inst.t2 * a;
  for (std::size_t p = 0; p < opts.points; ++p) {
    const Vector xi = rng.integer_matrix(inst.n, 1, 1000).column(0);
    for (int dir = 0; dir < 2; ++dir) {
      const Matrix& lhs = dir == 0 ? t2a : t1a;
      const Matrix& rhs = dir == 0 ? t1a : t2a;
      ++rep.pairs_checked;
      const Vector b = rhs * xi;
      const Matrix aug = hcat(lhs, Matrix::from_columns({b}, lhs.rows()));
      const RowEchelon e = rref(aug);
      if (!e.pivots.empty() && e.pivots.back() == lhs.cols()) continue;  // inconsistent: no v'
      Vector eta(inst.n, Rational(0));
      for (std::size_t i = 0; i < e.rank(); ++i) eta[e.pivots[i]] = e.reduced(i, lhs.cols());
      const Matrix ker = kernel_basis(lhs);
      if (eta == xi && ker.cols() == 0) continue;
      if (eta == xi) {
        const Vector k = ker.column(0);
        for (std::size_t i = 0; i < eta.size(); ++i) eta[i] += k[i];
      }
      const char* ti = dir == 0 ? "T1" : "T2";
      const char* tj = dir == 0 ? "T2" : "T1";
      rep.violations.push_back({std::string(ti) + " at v", std::string(tj) + " at v'", a * xi, a * eta});
    }
  }
  return rep;
}

}  // namespace sensing_detail

/// Number of (tau1, tau2) pairs the oracle would check with full sign
/// enumeration (2^m sign patterns suffice: Sigma2 can be moved onto rho1 P1).
inline std::uint64_t class_cardinality(const SensingInstance& inst) {
  if (inst.kind == ClassKind::endo_pair) return 1;
  const std::uint64_t f = sensing_detail::factorial(inst.m);
  std::uint64_t c = f * f;
  if (has_projections(inst.kind))
    c *= sensing_detail::masks_of_rank_at_least(inst.m, inst.r1).size() * sensing_detail::masks_of_rank_at_least(inst.m, inst.r2).size();
  return c;
}

inline CollisionReport exhaustive_oracle(const SensingInstance& inst, const OracleOptions& opts = {}) {
  using namespace sensing_detail;
  if (inst.v_basis.rows() != inst.m || inst.v_basis.cols() != inst.n)
    throw std::invalid_argument("oracle: V basis is " + inst.v_basis.shape() + ", expected m x n");
  if (inst.kind == ClassKind::endo_pair) {
    if (inst.t1.rows() != inst.m || !inst.t1.is_square() || inst.t2.rows() != inst.m || !inst.t2.is_square())
      throw std::invalid_argument("oracle: endo-pair matrices must be m x m");
    return endo_pair_report(inst, opts);
  }
  if (inst.m > 8) throw std::invalid_argument("oracle: m <= 8 required for permutation classes");

  const std::uint64_t base = class_cardinality(inst);
  CollisionReport rep;
  std::vector<SignPattern> patterns;
  const std::vector<int> plus(inst.m, 1);
  if (!is_signed(inst.kind)) {
    if (base > opts.budget) throw BudgetExceeded(base, opts.budget);
    patterns.push_back({plus, plus});
  } else if (base << inst.m <= opts.budget) {
    for (std::uint32_t s = 0; s < (1U << inst.m); ++s) {
      std::vector<int> s1(inst.m);
      for (std::size_t i = 0; i < inst.m; ++i) s1[i] = (s >> i & 1U) ? -1 : 1;
      patterns.push_back({std::move(s1), plus});
    }
  } else {
    if (base * opts.sign_samples > opts.budget) throw BudgetExceeded(base * opts.sign_samples, opts.budget);
    rep.signs_sampled = true;
    Rng rng(mix_seed(opts.seed, 0x5167));
    for (std::size_t k = 0; k < opts.sign_samples; ++k) {
      SignPattern p{std::vector<int>(inst.m), std::vector<int>(inst.m)};
      for (auto& s : p.s1) s = rng.sign();
      for (auto& s : p.s2) s = rng.sign();
      patterns.push_back(std::move(p));
    }
  }
  rep.sign_patterns = patterns.size();
  rep.pairs_checked = base * patterns.size();

  const auto perms = all_permutations(inst.m);
  const bool proj = has_projections(inst.kind);
  const auto masks1 = proj ? masks_of_rank_at_least(inst.m, inst.r1) : std::vector<std::uint32_t>{(1U << inst.m) - 1};
  const auto masks2 = proj ? masks_of_rank_at_least(inst.m, inst.r2) : std::vector<std::uint32_t>{(1U << inst.m) - 1};

  std::size_t jobs = opts.jobs ? opts.jobs : std::max(1U, std::thread::hardware_concurrency());
  jobs = std::min(jobs, perms.size());
  std::vector<std::vector<Violation>> parts(jobs);
  auto range = [&](std::size_t j) { return std::pair{perms.size() * j / jobs, perms.size() * (j + 1) / jobs}; };
  if (jobs == 1) {
    enumerate_range(inst, perms, masks1, masks2, patterns, 0, perms.size(), parts[0]);
  } else {
    std::vector<std::thread> workers;
    for (std::size_t j = 0; j < jobs; ++j)
      workers.emplace_back([&, j] {
        auto [b, e] = range(j);
        enumerate_range(inst, perms, masks1, masks2, patterns, b, e, parts[j]);
      });
    for (auto& w : workers) w.join();
  }
  for (auto& part : parts)
    for (auto& v : part) rep.violations.push_back(std::move(v));
  return rep;
}

/// Re-runs the oracle on fresh subspaces after a violation; a soundness
/// failure is a violation on every one of the `1 + retries` subspaces.
struct SoundnessResult {
  bool sound = true;
  std::size_t subspaces_tried = 0;
  CollisionReport last;
};

inline SoundnessResult oracle_with_resampling(SensingInstance inst, const OracleOptions& opts, std::int64_t bound, std::size_t retries = 5) {
  SoundnessResult out;
  for (std::size_t k = 0; k <= retries; ++k) {
    if (k > 0) inst.v_basis = random_subspace(inst.m, inst.n, bound, mix_seed(opts.seed, 0xbad0 + k));
    ++out.subspaces_tried;
    out.last = exhaustive_oracle(inst, opts);
    if (out.last.violations.empty()) return out;
  }
  out.sound = false;
  return out;
}

}  // namespace homsense
