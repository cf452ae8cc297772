#include "support.hpp"

#include <gtest/gtest.h>

using namespace homsense;
using namespace testing_support;

namespace {

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

Matrix diag_ints(std::initializer_list<long> d) {
  Vector v;
  for (long x : d) v.emplace_back(x);
  return Matrix::diagonal(v);
}

void expect_witness(const Matrix& t, const WitnessSubspace& w, std::size_t n) {
  EXPECT_EQ(w.basis.rows(), t.rows());
  EXPECT_EQ(w.basis.cols(), n);
  EXPECT_EQ(rank(w.basis), n);
  EXPECT_EQ(w.certificate_rank, 2 * n);
  EXPECT_EQ(bareiss_rank(hcat(w.basis, t * w.basis)), 2 * n);
}

}  // namespace

TEST(VerifyWitness, Examples) {
  EXPECT_EQ(verify_witness(Matrix::identity(3), Matrix(3, 0)), 0u);
  EXPECT_EQ(verify_witness(Matrix::identity(4), Matrix::from_ints({{1, 0}, {0, 1}, {1, 1}, {2, 0}})), 2u);
  EXPECT_THROW(verify_witness(Matrix::identity(3), Matrix(2, 1)), std::invalid_argument);
}

TEST(ConstructBoundary, Examples) {
  const Matrix d23 = diag_ints({2, 3});
  const auto a = construct_boundary(d23, 1);
  expect_witness(d23, a, 1);
  EXPECT_NE(a.basis(0, 0), 0);
  EXPECT_NE(a.basis(1, 0), 0);

  const Matrix j5 = jordan_matrix({{Rational(5), 2}});
  const auto b = construct_boundary(j5, 1);
  expect_witness(j5, b, 1);
  EXPECT_NE(b.basis(1, 0), 0);  // the chain top w2 = e2 is involved

  const Matrix jj = jordan_matrix({{Rational(1), 2}, {Rational(1), 2}});
  const auto c = construct_boundary(jj, 2);
  expect_witness(jj, c, 2);
  // spans the chain tops e2, e4
  EXPECT_EQ(rank(hcat(c.basis, Matrix::from_ints({{0, 0}, {1, 0}, {0, 0}, {0, 1}}))), 2u);
}

TEST(ConstructBoundary, Refusals) {
  EXPECT_THROW(construct_boundary(diag_ints({1, 2, 3}), 1), HypothesisError);
  // multiplicity 2 > n = 1 for the only eigenvalue: no eigenvalue of multiplicity exactly n
  EXPECT_THROW(construct_boundary(Matrix::identity(2), 1), HypothesisError);
  EXPECT_THROW(construct_boundary(Matrix::from_ints({{0, -1}, {1, 0}}), 1), RationalSpectrumError);
  EXPECT_THROW(construct_boundary(Matrix(2, 3), 1), std::invalid_argument);
}

TEST(ConstructHalf, Examples) {
  const Matrix d23 = diag_ints({2, 3});
  expect_witness(d23, construct_half(d23, 1), 1);
  const Matrix d1234 = diag_ints({1, 2, 3, 4});
  expect_witness(d1234, construct_half(d1234, 2), 2);
  const Matrix j = jordan_matrix({{Rational(2), 3}, {Rational(5), 1}});
  expect_witness(j, construct_half(j, 2), 2);
}

TEST(ConstructHalf, Refusals) {
  const Matrix t = direct_sum(Matrix::identity(3), diag_ints({2}));
  EXPECT_THROW(construct_half(t, 2), HypothesisError);
  EXPECT_THROW(construct_half(Matrix::identity(3), 1), HypothesisError);
}

TEST(ConstructGeneral, Examples) {
  const Matrix d5 = diag_ints({1, 2, 3, 4, 5});
  const auto a = construct_general(d5, 2);
  expect_witness(d5, a, 2);
  // S is spanned by the first four eigenlines
  for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(a.basis(4, j), 0);

  const Matrix j = jordan_matrix({{Rational(1), 3}, {Rational(1), 2}});
  expect_witness(j, construct_general(j, 2), 2);

  const Matrix d6 = diag_ints({1, 1, 1, 1, 2, 3});
  expect_witness(d6, construct_general(d6, 2), 2);
}

TEST(ConstructGeneral, Refusals) {
  EXPECT_THROW(construct_general(diag_ints({1, 1, 1, 2}), 2), HypothesisError);
  EXPECT_THROW(construct_general(diag_ints({1, 2, 3}), 2), HypothesisError);
}

TEST(Construct, RandomInstancesPerRegime) {
  Rng rng(2024);
  for (auto regime : {Regime::boundary, Regime::half, Regime::general}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto inst = random_construct_instance(regime, rng);
      SCOPED_TRACE(inst.t.rows());
      WitnessSubspace w;
      if (regime == Regime::boundary) w = construct_boundary(inst.t, inst.n);
      else if (regime == Regime::half) w = construct_half(inst.t, inst.n);
      else w = construct_general(inst.t, inst.n);
      expect_witness(inst.t, w, inst.n);
    }
  }
}

TEST(Construct, Deterministic) {
  Rng rng(9);
  const auto inst = random_construct_instance(Regime::general, rng);
  EXPECT_EQ(construct_general(inst.t, inst.n).basis, construct_general(inst.t, inst.n).basis);
}

// With an eigenspace of dimension > m - n, V and T(V) always meet.
TEST(Construct, LargeEigenspaceDefeatsEveryWitness) {
  Rng rng(77);
  const std::vector<Block> blocks = {{Rational(2), 1}, {Rational(2), 1}, {Rational(2), 1}, {Rational(2), 1}, {Rational(2), 1}, {Rational(-1), 1}};
  const Matrix t = conjugate(jordan_matrix(blocks), random_unimodular(6, rng));
  EXPECT_THROW(construct_general(t, 3), HypothesisError);
  EXPECT_THROW(construct_general(t, 2), HypothesisError);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = trial % 2 ? 3 : 2;
    EXPECT_LT(verify_witness(t, rng.integer_matrix(6, n, 50)), 2 * n);
  }
}
