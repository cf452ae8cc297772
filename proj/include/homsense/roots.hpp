#pragma once

// Squarefree parts and rational roots of polynomials over Q.

#include <homsense/polynomial.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace homsense {

namespace detail {

inline Integer pollard_brent(const Integer& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  const Integer c = Integer(seed * 7 + 1) % n;
  Integer y = Integer(seed) % n, g = 1, q = 1, x, ys, diff;
  auto step = [&](const Integer& z) -> Integer { return (z * z + c) % n; };
  const unsigned long m = 64;
  for (unsigned long r = 1; g == 1; r *= 2) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = step(y);
    for (unsigned long k = 0; k < r && g == 1; k += m) {
      ys = y;
      for (unsigned long i = 0; i < m && i < r - k; ++i) {
        y = step(y);
        diff = abs(x - y);
        q = (q * diff) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    }
  }
  if (g == n) {
    do {
      ys = step(ys);
      diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

inline void factor_into(Integer n, std::map<Integer, unsigned>& out) {
  if (n <= 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  for (unsigned long seed = 2;; ++seed) {
    Integer d = pollard_brent(n, seed);
    if (d != n && d != 1) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
  }
}

}  // namespace detail

/// Prime factorization of |n| (n != 0), ascending primes.
inline std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n) {
  if (n == 0) throw std::domain_error("factorize(0)");
  Integer m = abs(n);
  std::map<Integer, unsigned> f;
  for (unsigned long p = 2; p < 1000 && p * p <= m; ++p)
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++f[Integer(p)];
      m /= p;
    }
  detail::factor_into(m, f);
  return {f.begin(), f.end()};
}

/// Positive divisors of |n| (n != 0), ascending.
inline std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> ds{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = ds.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

/// Integer coefficients with content 1 and positive leading coefficient,
/// proportional to p.
inline std::vector<Integer> primitive_integer_form(const Polynomial& p) {
  if (p.is_zero()) throw std::domain_error("primitive form of the zero polynomial");
  Integer l = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Integer> ints;
  ints.reserve(p.coefficients().size());
  Integer g = 0;
  for (const auto& c : p.coefficients()) {
    Integer v = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    ints.push_back(std::move(v));
  }
  if (ints.back() < 0) g = -g;
  for (auto& v : ints) v /= g;
  return ints;
}

inline Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) throw std::domain_error("squarefree part of the zero polynomial");
  return (p / gcd(p, p.derivative())).monic();
}

inline bool is_squarefree(const Polynomial& p) { return !p.is_zero() && gcd(p, p.derivative()).is_constant(); }

struct RootMultiplicity {
  Rational root;
  std::size_t multiplicity;
  friend bool operator==(const RootMultiplicity&, const RootMultiplicity&) = default;
};

struct SquarefreeRoots {
  Polynomial squarefree;               // monic
  std::vector<RootMultiplicity> roots;  // ascending by root
};

/// Squarefree part and all rational roots (with algebraic multiplicities).
/// Candidates are d/e with d | constant term and e | leading coefficient of
/// the primitive integer form of the squarefree part.
inline SquarefreeRoots squarefree_and_rational_roots(const Polynomial& p) {
  if (p.is_zero()) throw std::domain_error("rational roots of the zero polynomial");
  SquarefreeRoots out;
  out.squarefree = squarefree_part(p);

  std::vector<Rational> found;
  Polynomial work = out.squarefree;
  if (work.coeff(0) == 0) {
    found.emplace_back(0);
    work = work / Polynomial::y();
  }
  if (!work.is_constant()) {
    const auto ints = primitive_integer_form(work);
    const auto num_divs = divisors(ints.front());
    const auto den_divs = divisors(ints.back());
    for (const auto& e : den_divs)
      for (const auto& d : num_divs)
        for (int sign : {1, -1}) {
          Rational cand{Integer(sign * d), e};
          cand.canonicalize();
          if (cand.get_den() != e) continue;  // reached already through a smaller denominator
          if (work(cand) == 0) found.push_back(cand);
        }
  }
  std::sort(found.begin(), found.end());
  for (const auto& r : found) {
    std::size_t mult = 0;
    Polynomial rest = p;
    const Polynomial lin = Polynomial::linear(r);
    for (;;) {
      auto [q, rem] = Polynomial::divmod(rest, lin);
      if (!rem.is_zero()) break;
      ++mult;
      rest = std::move(q);
    }
    out.roots.push_back({r, mult});
  }
  return out;
}

}  // namespace homsense
