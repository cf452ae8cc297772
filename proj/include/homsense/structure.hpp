#pragma once

// Structure of an endomorphism T of Q^m: invariant factors of yI - T,
// eigenvalue multiplicities over the algebraic closure, and Jordan chains for
// rational eigenvalues.

#include <homsense/charpoly.hpp>
#include <homsense/errors.hpp>
#include <homsense/matrix.hpp>
#include <homsense/polynomial.hpp>
#include <homsense/roots.hpp>
#include <homsense/smith.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <variant>
#include <vector>

namespace homsense {

struct InvariantFactorData {
  std::size_t matrix_dim = 0;
  std::vector<Polynomial> invariant_factors;  // nonconstant, monic, each divides the next
  Polynomial charpoly;
  Polynomial minimal_polynomial;
};

inline InvariantFactorData invariant_factors(const Matrix& t) {
  if (!t.is_square()) throw std::invalid_argument("invariant factors of non-square matrix " + t.shape());
  InvariantFactorData out;
  out.matrix_dim = t.rows();
  const SmithForm snf = smith_normal_form(PolyMatrix::characteristic(t), /*with_transforms=*/false);
  for (const auto& d : snf.diagonal)
    if (!d.is_constant()) out.invariant_factors.push_back(d.monic());
  out.charpoly = charpoly(t);
  out.minimal_polynomial =
      out.invariant_factors.empty() ? Polynomial(Rational(1)) : out.invariant_factors.back();
  return out;
}

/// A rational eigenvalue, or a squarefree factor of the minimal polynomial
/// without rational roots standing for all of its (conjugate) roots. Every
/// root of one tag has the same geometric multiplicity.
using EigenDescriptor = std::variant<Rational, Polynomial>;

struct EigenEntry {
  EigenDescriptor descriptor;
  std::size_t multiplicity = 0;
  std::size_t degree() const {
    return std::holds_alternative<Rational>(descriptor) ? 1 : *std::get<Polynomial>(descriptor).degree();
  }
};

struct EigenMultiplicityReport {
  std::size_t matrix_dim = 0;
  std::vector<EigenEntry> entries;  // rational eigenvalues ascending, then tags by degree

  std::size_t multiplicity_of(const Rational& lambda) const {
    for (const auto& e : entries)
      if (const auto* r = std::get_if<Rational>(&e.descriptor); r && *r == lambda) return e.multiplicity;
    return 0;
  }
};

/// Geometric multiplicities from the invariant-factor chain d_1 | ... | d_k.
/// With g_j the squarefree part of d_j, the quotient g_j / g_{j-1} collects
/// exactly the irreducible factors dividing d_j, ..., d_k and no earlier
/// factor. Rational roots are split off individually; what remains of each
/// quotient becomes one tag.
inline EigenMultiplicityReport geometric_multiplicities(const InvariantFactorData& data) {
  EigenMultiplicityReport out;
  out.matrix_dim = data.matrix_dim;
  const auto& d = data.invariant_factors;
  auto count_dividing = [&](const Polynomial& p) {
    return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [&](const Polynomial& f) { return p.divides(f); }));
  };
  std::vector<EigenEntry> rationals;
  std::vector<EigenEntry> tags;
  Polynomial prev(Rational(1));
  for (const auto& f : d) {
    const Polynomial g = squarefree_part(f);
    Polynomial fresh = (g / prev).monic();
    prev = g;
    if (fresh.is_constant()) continue;
    const auto sr = squarefree_and_rational_roots(fresh);
    for (const auto& [root, mult] : sr.roots) {
      const Polynomial lin = Polynomial::linear(root);
      fresh = fresh / lin;
      rationals.push_back({root, count_dividing(lin)});
    }
    if (!fresh.is_constant()) tags.push_back({fresh.monic(), count_dividing(fresh)});
  }
  std::sort(rationals.begin(), rationals.end(), [](const EigenEntry& a, const EigenEntry& b) {
    return std::get<Rational>(a.descriptor) < std::get<Rational>(b.descriptor);
  });
  std::stable_sort(tags.begin(), tags.end(), [](const EigenEntry& a, const EigenEntry& b) { return a.degree() < b.degree(); });
  out.entries = std::move(rationals);
  out.entries.insert(out.entries.end(), tags.begin(), tags.end());
  return out;
}

inline EigenMultiplicityReport geometric_multiplicities(const Matrix& t) {
  return geometric_multiplicities(invariant_factors(t));
}

/// Largest eigenspace dimension over eigenvalues outside `excluded`; 0 if none.
/// Tags never contain rational roots, so they are never excluded.
inline std::size_t max_multiplicity_excluding(const EigenMultiplicityReport& report, const std::set<Rational>& excluded) {
  std::size_t best = 0;
  for (const auto& e : report.entries) {
    if (const auto* r = std::get_if<Rational>(&e.descriptor); r && excluded.count(*r)) continue;
    best = std::max(best, e.multiplicity);
  }
  return best;
}

inline std::size_t max_multiplicity_excluding(const Matrix& t, const std::set<Rational>& excluded) {
  return max_multiplicity_excluding(geometric_multiplicities(t), excluded);
}

struct JordanChainSet {
  Rational eigenvalue;
  // chains[c][0] is the eigenvector w_1; T w_j = lambda w_j + w_{j-1}.
  std::vector<std::vector<Vector>> chains;

  std::size_t total_vectors() const {
    std::size_t s = 0;
    for (const auto& c : chains) s += c.size();
    return s;
  }
};

struct CyclicSummand {
  Rational eigenvalue;
  std::vector<Vector> chain;  // Jordan basis w_1, ..., w_d
  std::size_t dimension() const { return chain.size(); }
};

namespace detail {

inline Matrix shifted(const Matrix& t, const Rational& lambda) {
  Matrix n = t;
  for (std::size_t i = 0; i < n.rows(); ++i) n(i, i) -= lambda;
  return n;
}

inline bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

/// Jordan chains spanning the generalized eigenspace of a rational eigenvalue,
/// built from the kernel filtration ker N ⊂ ker N^2 ⊂ ... with N = T - lambda.
/// Chain tops are taken greedily from the kernel basis at each level, longest
/// level first. Chains are scaled so the top's first nonzero entry is 1 and
/// sorted by decreasing length, then lexicographically by top.
inline JordanChainSet jordan_chains(const Matrix& t, const Rational& lambda) {
  if (!t.is_square()) throw std::invalid_argument("Jordan chains of non-square matrix " + t.shape());
  const std::size_t m = t.rows();
  const Matrix nil = detail::shifted(t, lambda);

  std::vector<Matrix> kernels{Matrix(m, 0)};  // kernels[e] = basis of ker N^e
  Matrix power = Matrix::identity(m);
  for (;;) {
    power = nil * power;
    Matrix k = kernel_basis(power);
    if (k.cols() == kernels.back().cols()) break;
    kernels.push_back(std::move(k));
  }
  if (kernels.size() == 1) throw std::domain_error(to_string(lambda) + " is not an eigenvalue");
  const std::size_t depth = kernels.size() - 1;

  struct Top {
    Vector v;
    std::size_t length;
  };
  std::vector<Top> tops;
  for (std::size_t e = depth; e >= 1; --e) {
    std::vector<Vector> span = kernels[e - 1].columns();
    for (const auto& top : tops) {
      Vector w = top.v;
      for (std::size_t s = e; s < top.length; ++s) w = nil * w;
      span.push_back(std::move(w));
    }
    std::size_t r = span.empty() ? 0 : rank(Matrix::from_columns(span, m));
    const std::size_t target = kernels[e].cols();
    for (std::size_t j = 0; j < kernels[e].cols() && r < target; ++j) {
      Vector cand = kernels[e].column(j);
      span.push_back(cand);
      const std::size_t r2 = rank(Matrix::from_columns(span, m));
      if (r2 > r) {
        r = r2;
        tops.push_back({std::move(cand), e});
      } else {
        span.pop_back();
      }
    }
  }

  JordanChainSet out;
  out.eigenvalue = lambda;
  for (auto& top : tops) {
    auto first = std::find_if(top.v.begin(), top.v.end(), [](const Rational& x) { return x != 0; });
    const Rational s = 1 / *first;
    for (auto& x : top.v) x *= s;
  }
  std::sort(tops.begin(), tops.end(), [](const Top& a, const Top& b) {
    if (a.length != b.length) return a.length > b.length;
    return detail::lex_less(a.v, b.v);
  });
  for (const auto& top : tops) {
    std::vector<Vector> chain(top.length);
    chain[top.length - 1] = top.v;
    for (std::size_t j = top.length - 1; j-- > 0;) chain[j] = nil * chain[j + 1];
    out.chains.push_back(std::move(chain));
  }
  return out;
}

/// Full Jordan decomposition over Q. Requires the characteristic polynomial to
/// split over Q; throws RationalSpectrumError otherwise.
/// Summands are grouped by ascending eigenvalue, each group in chain order.
inline std::vector<CyclicSummand> jordan_decomposition(const Matrix& t) {
  if (!t.is_square()) throw std::invalid_argument("Jordan decomposition of non-square matrix " + t.shape());
  const auto sr = squarefree_and_rational_roots(charpoly(t));
  std::size_t algebraic = 0;
  for (const auto& r : sr.roots) algebraic += r.multiplicity;
  if (algebraic != t.rows()) throw RationalSpectrumError();
  std::vector<CyclicSummand> out;
  for (const auto& r : sr.roots) {
    auto set = jordan_chains(t, r.root);
    for (auto& c : set.chains) out.push_back({r.root, std::move(c)});
  }
  return out;
}

}  // namespace homsense
