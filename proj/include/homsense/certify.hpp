#pragma once

// Uniqueness certifiers. Each returns a certificate whose verdict is
// `certified` exactly when every recorded check holds, and `undecided`
// otherwise. The checks are sufficient conditions, so a failing check never
// proves non-uniqueness; `refuted` is reserved for certificates carrying an
// explicit counterexample.

#include <homsense/construct.hpp>
#include <homsense/errors.hpp>
#include <homsense/matrix.hpp>
#include <homsense/permcodim.hpp>
#include <homsense/random.hpp>
#include <homsense/structure.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace homsense {

enum class Verdict { certified, refuted, undecided };
enum class Route { prop5_eigen, thm1_tauH, thm2_permutation, cor3_signed, prop4_general_point };
enum class SignMode { plain, plus_minus };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::undecided: return "undecided";
  }
  return "?";
}

inline const char* to_string(Route r) {
  switch (r) {
    case Route::prop5_eigen: return "prop5_eigen";
    case Route::thm1_tauH: return "thm1_tauH";
    case Route::thm2_permutation: return "thm2_permutation";
    case Route::cor3_signed: return "cor3_signed";
    case Route::prop4_general_point: return "prop4_general_point";
  }
  return "?";
}

inline const char* to_string(SignMode s) { return s == SignMode::plain ? "plain" : "plus_minus"; }

/// The eigenvalues whose eigenspaces do not count against uniqueness.
inline std::set<Rational> excluded_eigenvalues(SignMode mode) {
  if (mode == SignMode::plain) return {Rational(1)};
  return {Rational(1), Rational(-1)};
}

struct Check {
  std::string label;      // e.g. "rank(T2) >= 2n"
  std::string statement;  // the instantiated inequality, e.g. "4 >= 4"
  bool holds = false;
};

struct TauHSample {
  std::uint64_t seed = 0;
  Matrix h_basis;
  Matrix t_h;
  EigenMultiplicityReport report;
  std::size_t excluded_max = 0;
  std::size_t bound = 0;  // l - n
  bool holds = false;
};

struct Evidence {
  std::vector<Check> checks;
  std::string branch;
  std::optional<EigenMultiplicityReport> multiplicities;
  std::optional<CodimAccount> account;
  std::optional<WitnessSubspace> witness;
  std::optional<Rational> branch_eigenvalue;
  std::optional<Matrix> fixed_functionals;      // n independent left eigenvectors for branch_eigenvalue
  std::vector<TauHSample> tau_h;
  std::optional<SignedPermutation> composite;   // the single permutation of the permutation route
  std::optional<Vector> general_point;          // v with T1 v, T2 v independent
  std::optional<std::pair<Vector, Vector>> counterexample;
  std::vector<std::string> notes;
};

struct UniquenessCertificate {
  Verdict verdict = Verdict::undecided;
  Route route = Route::prop5_eigen;
  std::size_t m = 0;
  std::size_t n = 0;
  SignMode sign_mode = SignMode::plain;
  Evidence evidence;

  bool all_checks_hold() const {
    return std::all_of(evidence.checks.begin(), evidence.checks.end(), [](const Check& c) { return c.holds; });
  }
};

namespace certify_detail {

inline std::string num(std::size_t x) { return std::to_string(x); }

inline bool add_check(Evidence& ev, std::string label, std::size_t lhs, const char* op, std::size_t rhs) {
  bool holds = false;
  const std::string o = op;
  if (o == ">=") holds = lhs >= rhs;
  else if (o == "<=") holds = lhs <= rhs;
  else if (o == "==") holds = lhs == rhs;
  else throw std::logic_error("unknown comparison " + o);
  ev.checks.push_back({std::move(label), num(lhs) + " " + o + " " + num(rhs), holds});
  return holds;
}

inline void finish(UniquenessCertificate& c) {
  c.verdict = !c.evidence.checks.empty() && c.all_checks_hold() ? Verdict::certified : Verdict::undecided;
}

inline void require_square_pair(const Matrix& t1, const Matrix& t2) {
  if (!t1.is_square() || !t2.is_square() || t1.rows() != t2.rows())
    throw std::invalid_argument("endomorphism pair must be square of equal size, got " + t1.shape() + " and " + t2.shape());
}

}  // namespace certify_detail

/// Eigen-multiplicity certificate for a single endomorphism T of Q^m:
/// every eigenspace outside the excluded set has dimension <= m - n.
inline UniquenessCertificate certify_prop5(const Matrix& t, std::size_t n, SignMode sign_mode = SignMode::plain) {
  using namespace certify_detail;
  if (!t.is_square()) throw std::invalid_argument("certify_prop5 needs a square matrix, got " + t.shape());
  const std::size_t m = t.rows();
  if (n == 0 || m < 2 * n) throw std::invalid_argument("certify_prop5 needs 1 <= n and 2n <= m (m = " + num(m) + ", n = " + num(n) + ")");

  UniquenessCertificate c;
  c.route = Route::prop5_eigen;
  c.m = m;
  c.n = n;
  c.sign_mode = sign_mode;
  auto& ev = c.evidence;
  ev.multiplicities = geometric_multiplicities(t);
  const bool ok = add_check(ev, "max dim E_lambda outside excluded <= m - n",
                            max_multiplicity_excluding(*ev.multiplicities, excluded_eigenvalues(sign_mode)), "<=", m - n);

  // An excluded eigenvalue with at least n independent left eigenvectors L
  // pins xi_2 = lambda xi_1 whenever L A is invertible.
  for (const Rational& lambda : excluded_eigenvalues(sign_mode)) {
    if (ev.multiplicities->multiplicity_of(lambda) < n) continue;
    ev.branch = "jordan_index";
    ev.branch_eigenvalue = lambda;
    Matrix left = kernel_basis(t.transpose() - lambda * Matrix::identity(m)).transpose();
    std::vector<std::size_t> first(n);
    for (std::size_t i = 0; i < n; ++i) first[i] = i;
    left = left.select_rows(first);
    add_check(ev, "rank(L) == n for left eigenvectors L", rank(left), "==", n);
    add_check(ev, "L T == lambda L", left * t == lambda * left ? 1 : 0, "==", 1);
    ev.fixed_functionals = std::move(left);
    break;
  }
  if (ev.branch.empty()) {
    ev.branch = "transversality";
    if (ok) {
      try {
        ev.witness = construct_general(t, n);
        add_check(ev, "rank([A | T A]) == 2n", ev.witness->certificate_rank, "==", 2 * n);
      } catch (const RationalSpectrumError&) {
        ev.notes.push_back("witness not built: spectrum is not rational; transversality rests on the multiplicity bound");
      }
    }
  }
  finish(c);
  return c;
}

struct TauHReduction {
  Matrix t_h;      // l x l matrix of (T2|_H)^{-1} rho T1|_H in the basis h_basis
  Matrix h_basis;  // m x l
  Matrix rho;      // m x m idempotent onto im(T2)
  std::size_t attempts = 0;
};

/// Idempotent onto im(T2) along the coordinate vectors outside the pivots of
/// the column echelon form of T2.
inline Matrix image_projection(const Matrix& t2) {
  const RowEchelon e = rref(t2.transpose());
  Matrix rho(t2.rows(), t2.rows());
  for (std::size_t i = 0; i < e.rank(); ++i)
    for (std::size_t r = 0; r < t2.rows(); ++r) rho(r, e.pivots[i]) = e.reduced(i, r);
  return rho;
}

/// Restricts the pair (rho T1, T2) to a random l-dimensional H transversal
/// to ker(T2), where l = rank(T2).
inline TauHReduction reduce_tauH(const Matrix& t1, const Matrix& t2, std::size_t trials = 16, std::uint64_t seed = 0,
                                 std::int64_t bound = 100) {
  certify_detail::require_square_pair(t1, t2);
  const std::size_t ell = rank(t2);
  if (ell == 0) throw HypothesisError("reduce_tauH needs rank(T2) >= 1");
  TauHReduction out;
  out.rho = image_projection(t2);
  Rng rng(seed);
  for (std::size_t a = 1; a <= trials; ++a) {
    Matrix h = rng.integer_matrix(t2.rows(), ell, bound);
    const Matrix t2h = t2 * h;
    if (rank(t2h) != ell) continue;
    out.t_h = solve_full_column_rank(t2h, out.rho * t1 * h);
    out.h_basis = std::move(h);
    out.attempts = a;
    return out;
  }
  throw std::runtime_error("reduce_tauH: no H transversal to ker(T2) in " + std::to_string(trials) + " trials");
}

/// The pair (T1, T2) through random sections H: requires rank gates and, on
/// every sampled H, max eigenspace dimension of tau_H outside {1} <= l - n.
/// A pass certifies the consequence used for generic uniqueness, not
/// dim U itself.
inline UniquenessCertificate certify_thm1(const Matrix& t1, const Matrix& t2, std::size_t n, std::uint64_t seed = 0,
                                          std::size_t samples = 5) {
  using namespace certify_detail;
  require_square_pair(t1, t2);
  const std::size_t m = t1.rows();
  if (2 * n > m) throw std::invalid_argument("certify_thm1 needs n <= m/2");
  UniquenessCertificate c;
  c.route = Route::thm1_tauH;
  c.m = m;
  c.n = n;
  auto& ev = c.evidence;
  const std::size_t r2 = rank(t2), r1 = rank(t1);
  const bool g2 = add_check(ev, "rank(T2) >= 2n", r2, ">=", 2 * n);
  const bool g1 = add_check(ev, "rank(T1) >= n", r1, ">=", n);
  if (!g2 || !g1 || r2 == 0) {
    ev.notes.push_back("rank gate failed; no sections sampled");
    finish(c);
    return c;
  }
  std::size_t passed = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    TauHSample sample;
    sample.seed = mix_seed(seed, s);
    auto red = reduce_tauH(t1, t2, 16, sample.seed);
    sample.report = geometric_multiplicities(red.t_h);
    sample.excluded_max = max_multiplicity_excluding(sample.report, {Rational(1)});
    sample.bound = r2 - n;
    sample.holds = sample.excluded_max <= sample.bound;
    passed += sample.holds;
    sample.h_basis = std::move(red.h_basis);
    sample.t_h = std::move(red.t_h);
    ev.tau_h.push_back(std::move(sample));
  }
  add_check(ev, "sections with max dim E_lambda(tau_H), lambda != 1, <= l - n", passed, "==", samples);
  if (passed != 0 && passed != samples) ev.notes.push_back("sampled sections disagree");
  ev.notes.push_back("certifies the generic-section eigen condition, not dim U directly");
  finish(c);
  return c;
}

/// The composite w = (Sigma2 Pi2) v turns rho2 rho1 P1 v1 = rho2 P2 v2 into
/// rho2 rho1 (P1 P2^{-1}) w1 = rho2 w2.
inline SignedPermutation composite_permutation(const SignedPermutation& pi1, const SignedPermutation& pi2) {
  return pi1.compose(pi2.inverse());
}

/// Coordinate-permutation pair tau1 = rho1 Sigma1 Pi1, tau2 = rho2 Sigma2 Pi2.
/// Certifies uniqueness (up to sign when any sign is negative) through the
/// codimension account of the composite permutation.
inline UniquenessCertificate certify_thm2(const SignedPermutation& pi1, const SignedPermutation& pi2,
                                          const CoordinateProjection& rho1, const CoordinateProjection& rho2, std::size_t n) {
  using namespace certify_detail;
  const std::size_t m = pi1.size();
  if (pi2.size() != m || rho1.size() != m || rho2.size() != m)
    throw std::invalid_argument("certify_thm2: permutations and projections must share one size");
  if (2 * n > m) throw std::invalid_argument("certify_thm2 needs n <= m/2");
  UniquenessCertificate c;
  c.m = m;
  c.n = n;
  const bool signed_case = pi1.has_negative_sign() || pi2.has_negative_sign();
  c.route = signed_case ? Route::cor3_signed : Route::thm2_permutation;
  c.sign_mode = signed_case ? SignMode::plus_minus : SignMode::plain;
  auto& ev = c.evidence;
  add_check(ev, "rank(rho2) >= 2n", rho2.rank(), ">=", 2 * n);
  add_check(ev, "rank(rho1) >= n", rho1.rank(), ">=", n);
  ev.composite = composite_permutation(pi1, pi2);
  ev.account = codim_account(*ev.composite, rho1, rho2);
  add_check(ev, "codimension bound >= n", ev.account->codim_bound, ">=", n);
  add_check(ev, "codimension bound >= floor(rank(rho2)/2)", ev.account->codim_bound, ">=", rho2.rank() / 2);
  finish(c);
  return c;
}

/// Exact test for T1 = lambda T2 with some lambda in Q (including T1 = 0).
inline bool proportional(const Matrix& t1, const Matrix& t2) {
  std::optional<Rational> ratio;
  for (std::size_t i = 0; i < t1.rows(); ++i)
    for (std::size_t j = 0; j < t1.cols(); ++j) {
      const Rational &a = t1(i, j), &b = t2(i, j);
      if (b == 0) {
        if (a != 0) return false;
        continue;
      }
      const Rational q = a / b;
      if (ratio && *ratio != q) return false;
      ratio = q;
    }
  return true;
}

/// General-point certificate: rank gates, non-proportionality, and an
/// explicit V = V1 + span(v) with rank([T1 A | T2 v]) = n + 1.
inline UniquenessCertificate certify_prop4(const Matrix& t1, const Matrix& t2, std::size_t n, std::uint64_t seed = 0) {
  using namespace certify_detail;
  require_square_pair(t1, t2);
  if (n == 0) throw std::invalid_argument("certify_prop4 needs n >= 1");
  const std::size_t m = t1.rows();
  UniquenessCertificate c;
  c.route = Route::prop4_general_point;
  c.m = m;
  c.n = n;
  auto& ev = c.evidence;
  const bool g1 = add_check(ev, "rank(T1) >= n + 1", rank(t1), ">=", n + 1);
  const bool g2 = add_check(ev, "rank(T2) >= n + 1", rank(t2), ">=", n + 1);
  const bool np = !proportional(t1, t2) && !proportional(t2, t1);
  ev.checks.push_back({"T1 and T2 are not scalar multiples", np ? "no lambda with T1 = lambda T2" : "T1 = lambda T2", np});
  if (!g1 || !g2 || !np) {
    finish(c);
    return c;
  }

  auto independent_images = [&](const Vector& v) { return rank(Matrix::from_columns({t1 * v, t2 * v}, m)) == 2; };
  std::optional<Vector> v;
  auto unit = [&](std::size_t i) {
    Vector e(m, Rational(0));
    e[i] = 1;
    return e;
  };
  for (std::size_t i = 0; i < m && !v; ++i)
    if (independent_images(unit(i))) v = unit(i);
  for (std::size_t i = 0; i < m && !v; ++i)
    for (std::size_t j = i + 1; j < m && !v; ++j) {
      Vector e = unit(i);
      e[j] = 1;
      if (independent_images(e)) v = e;
    }
  Rng rng(seed);
  for (int k = 0; k < 64 && !v; ++k) {
    Vector e = rng.integer_matrix(m, 1, 100).column(0);
    if (independent_images(e)) v = e;
  }
  if (!v) throw std::logic_error("certify_prop4: no v with independent images although T1, T2 are not proportional");

  // V1: preimages of n - 1 vectors of im(T1) independent modulo span(T1 v, T2 v).
  std::vector<Vector> span{t1 * *v, t2 * *v};
  std::vector<Vector> basis;
  std::size_t r = 2;
  for (std::size_t j = 0; j < m && basis.size() + 1 < n; ++j) {
    span.push_back(t1 * unit(j));
    const std::size_t r2 = rank(Matrix::from_columns(span, m));
    if (r2 > r) {
      r = r2;
      basis.push_back(unit(j));
    } else {
      span.pop_back();
    }
  }
  basis.push_back(*v);
  WitnessSubspace w;
  w.basis = Matrix::from_columns(basis, m);
  w.certificate_rank = rank(hcat(t1 * w.basis, Matrix::from_columns({t2 * *v}, m)));
  add_check(ev, "rank(A) == n", rank(w.basis), "==", n);
  add_check(ev, "rank([T1 A | T2 v]) == n + 1", w.certificate_rank, "==", n + 1);
  ev.general_point = std::move(v);
  ev.witness = std::move(w);
  finish(c);
  return c;
}

}  // namespace homsense
