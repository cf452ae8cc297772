#include "support.hpp"

#include <gtest/gtest.h>

using namespace homsense;
using namespace testing_support;

namespace {

Polynomial poly(std::initializer_list<long> ascending) {
  std::vector<Rational> c;
  for (long x : ascending) c.emplace_back(x);
  return Polynomial(c);
}

}  // namespace

TEST(Rational, ParsesAndReduces) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(parse_rational("+7/21"), Rational(1, 3));
  EXPECT_EQ(to_string(parse_rational("0/5")), "0");
  EXPECT_EQ(to_string(parse_rational("-10/4")), "-5/2");
  EXPECT_THROW(parse_rational("10/-4"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::domain_error);
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/"), std::invalid_argument);
}

TEST(Rational, HugeValuesRoundTrip) {
  const std::string big = "123456789012345678901234567890/987654321098765432109876543210";
  const Rational r = parse_rational(big);
  EXPECT_EQ(parse_rational(to_string(r)), r);
  EXPECT_EQ(r.get_den() > 0, true);
}

TEST(Rref, Examples) {
  const auto id = rref(Matrix::identity(3));
  EXPECT_EQ(id.reduced, Matrix::identity(3));
  EXPECT_EQ(id.pivots, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(id.rank(), 3u);

  const auto z = rref(Matrix(2, 2));
  EXPECT_EQ(z.reduced, Matrix(2, 2));
  EXPECT_TRUE(z.pivots.empty());

  const auto r = rref(Matrix::from_ints({{1, 2}, {2, 4}}));
  EXPECT_EQ(r.reduced, Matrix::from_ints({{1, 2}, {0, 0}}));
  EXPECT_EQ(r.rank(), 1u);
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel_basis(Matrix::identity(3)).cols(), 0u);

  const Matrix k = kernel_basis(Matrix::from_ints({{1, 1}}));
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_EQ(k(0, 0), -k(1, 0));
  EXPECT_NE(k(0, 0), 0);

  const Matrix k2 = kernel_basis(Matrix::from_ints({{0, 1}, {0, 0}}));
  ASSERT_EQ(k2.cols(), 1u);
  EXPECT_NE(k2(0, 0), 0);
  EXPECT_EQ(k2(1, 0), 0);
}

TEST(Kernel, RankNullityOnRandomMatrices) {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto rows = static_cast<std::size_t>(rng.uniform(1, 6));
    const auto cols = static_cast<std::size_t>(rng.uniform(1, 6));
    const auto r = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(std::min(rows, cols))));
    const Matrix m = rng.integer_matrix(rows, r, 4) * rng.integer_matrix(r, cols, 4);
    const Matrix k = kernel_basis(m);
    EXPECT_EQ(rank(m), bareiss_rank(m));
    EXPECT_EQ(rank(m) + k.cols(), cols);
    EXPECT_TRUE((m * k).is_zero());
    EXPECT_EQ(rank(k), k.cols());
  }
}

TEST(Charpoly, Examples) {
  EXPECT_EQ(charpoly(Matrix::identity(2)), pow(Polynomial::linear(1), 2));
  // companion matrix of y^2 + 1
  EXPECT_EQ(charpoly(Matrix::from_ints({{0, -1}, {1, 0}})), poly({1, 0, 1}));
  EXPECT_EQ(charpoly(signed_cycle_matrix({1, 1, -1, 1})), poly({1, 0, 0, 0, 1}));
  EXPECT_THROW(charpoly(Matrix(2, 3)), std::invalid_argument);
}

TEST(Charpoly, MatchesInterpolatedDeterminant) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto m = static_cast<std::size_t>(rng.uniform(1, 6));
    Matrix t = rng.integer_matrix(m, m, 9);
    t(0, 0) += Rational(1, 3);
    const Polynomial p = charpoly(t);
    EXPECT_TRUE(p.is_monic());
    EXPECT_EQ(*p.degree(), m);
    EXPECT_EQ(p, interpolated_charpoly(t));
  }
}

TEST(Charpoly, SimilarityInvariant) {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = static_cast<std::size_t>(rng.uniform(2, 6));
    const Matrix t = rng.integer_matrix(m, m, 5);
    Matrix s = random_unimodular(m, rng);
    s(0, 0) += Rational(1, 2);  // no longer unimodular, still generically invertible
    if (determinant(s) == 0) continue;
    EXPECT_EQ(charpoly(conjugate(t, s)), charpoly(t));
  }
}

TEST(Smith, Examples) {
  const Polynomial y = Polynomial::y();
  auto diag = [](const Matrix& t) { return smith_normal_form(PolyMatrix::characteristic(t)).diagonal; };
  EXPECT_EQ(diag(Matrix(2, 2)), (std::vector<Polynomial>{y, y}));
  EXPECT_EQ(diag(Matrix::from_ints({{0, 1}, {0, 0}})), (std::vector<Polynomial>{Rational(1), y * y}));
  EXPECT_EQ(diag(Matrix::diagonal({Rational(1), Rational(2)})),
            (std::vector<Polynomial>{Rational(1), Polynomial::linear(1) * Polynomial::linear(2)}));
}

TEST(Smith, TransformsAreUnimodularAndDiagonalize) {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const auto m = static_cast<std::size_t>(rng.uniform(1, 5));
    const Matrix t = trial % 2 ? rng.integer_matrix(m, m, 3) : conjugate(jordan_matrix(random_blocks(m, rng)), random_unimodular(m, rng));
    const PolyMatrix p = PolyMatrix::characteristic(t);
    const SmithForm s = smith_normal_form(p);
    const PolyMatrix d = s.left * p * s.right;
    Polynomial product(Rational(1));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j)
        if (i != j) { EXPECT_TRUE(d(i, j).is_zero()); }
      EXPECT_EQ(d(i, i), s.diagonal[i]);
      EXPECT_TRUE(s.diagonal[i].is_monic());
      if (i + 1 < m) { EXPECT_TRUE(s.diagonal[i].divides(s.diagonal[i + 1])); }
      product = product * s.diagonal[i];
    }
    EXPECT_EQ(product, charpoly(t));
    EXPECT_TRUE(determinant(s.left).is_constant() && !determinant(s.left).is_zero());
    EXPECT_TRUE(determinant(s.right).is_constant() && !determinant(s.right).is_zero());
  }
}

TEST(Roots, Examples) {
  const Polynomial p = pow(Polynomial::linear(1), 2) * Polynomial::linear(-2);
  const auto sr = squarefree_and_rational_roots(p);
  EXPECT_EQ(sr.squarefree, Polynomial::linear(1) * Polynomial::linear(-2));
  EXPECT_EQ(sr.roots, (std::vector<RootMultiplicity>{{Rational(-2), 1}, {Rational(1), 2}}));

  const auto none = squarefree_and_rational_roots(poly({1, 0, 1}));
  EXPECT_EQ(none.squarefree, poly({1, 0, 1}));
  EXPECT_TRUE(none.roots.empty());

  const auto quartic = squarefree_and_rational_roots(poly({1, 0, 0, 0, 1}));
  EXPECT_EQ(quartic.squarefree, poly({1, 0, 0, 0, 1}));
  EXPECT_TRUE(quartic.roots.empty());

  EXPECT_THROW(squarefree_and_rational_roots(Polynomial()), std::domain_error);
}

TEST(Roots, FractionalRootsAndZero) {
  // (3y - 2)^2 (y + 1/2) y
  const Polynomial p = pow(Polynomial::linear(Rational(2, 3)), 2) * Polynomial::linear(Rational(-1, 2)) * Polynomial::y();
  const auto sr = squarefree_and_rational_roots(p * Polynomial(Rational(9)));
  EXPECT_EQ(sr.roots, (std::vector<RootMultiplicity>{{Rational(-1, 2), 1}, {Rational(0), 1}, {Rational(2, 3), 2}}));
}

// Brute force over all +-d/e with d | a_0, e | a_k for small integer polynomials.
TEST(Roots, NoRationalRootMissedOnSmallPolynomials) {
  Rng rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const auto deg = static_cast<std::size_t>(rng.uniform(1, 6));
    std::vector<Rational> c(deg + 1);
    for (auto& x : c) x = Rational(static_cast<long>(rng.uniform(-12, 12)));
    if (c[deg] == 0) c[deg] = 1;
    if (c[0] == 0) c[0] = 1;
    // multiply in a known rational factor half the time
    Polynomial p(c);
    if (trial % 2) p = p * Polynomial(std::vector<Rational>{Rational(static_cast<long>(rng.uniform(-5, 5))), Rational(static_cast<long>(rng.uniform(1, 4)))});
    if (p.coeff(0) == 0) continue;
    const auto sr = squarefree_and_rational_roots(p);
    std::vector<Rational> reported;
    for (const auto& r : sr.roots) {
      EXPECT_EQ(p(r.root), 0);
      reported.push_back(r.root);
    }
    const auto ints = primitive_integer_form(p);
    const long a0 = std::labs(ints.front().get_si()), ak = std::labs(ints.back().get_si());
    for (long d = 1; d <= a0; ++d) {
      if (a0 % d) continue;
      for (long e = 1; e <= ak; ++e) {
        if (ak % e) continue;
        for (long s : {1L, -1L}) {
          const Rational cand(s * d, e);
          Rational canon = cand;
          canon.canonicalize();
          if (p(canon) == 0) { EXPECT_NE(std::find(reported.begin(), reported.end(), canon), reported.end()) << p.to_string(); }
        }
      }
    }
  }
}

TEST(Polynomial, ArithmeticAndDisplay) {
  const Polynomial a = poly({1, -3, 2});  // 2y^2 - 3y + 1
  EXPECT_EQ(a.monic().to_string(), "y^2 - 3/2*y + 1/2");
  auto [q, r] = Polynomial::divmod(a, Polynomial::linear(1));
  EXPECT_EQ(q, poly({-1, 2}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_FALSE(Polynomial().degree().has_value());
  EXPECT_EQ(gcd(a, poly({-1, 1})), Polynomial::linear(1));
}

TEST(Determinant, MatchesCofactorExpansion) {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = static_cast<std::size_t>(rng.uniform(1, 5));
    const Matrix a = rng.integer_matrix(m, m, 7);
    EXPECT_EQ(determinant(a), cofactor_det(a));
    if (determinant(a) != 0) { EXPECT_EQ(a * inverse(a), Matrix::identity(m)); }
  }
}
