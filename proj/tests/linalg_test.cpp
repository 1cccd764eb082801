#include "hpe/linalg.hpp"

#include <gtest/gtest.h>

namespace hpe {
namespace {

// Row reduction written independently of the library, for rank only.
std::size_t oracle_rank(const BaseField& f, Matrix m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pivot, k), m(rank, k));
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      const Fq factor = f.div(m(r, c), m(rank, c));
      for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) = f.sub(m(r, k), f.mul(factor, m(rank, k)));
    }
    ++rank;
  }
  return rank;
}

bool is_zero(const Vec& v) {
  for (Fq c : v)
    if (c != 0) return false;
  return true;
}

TEST(SolveLinear, IdentitySystem) {
  const BaseField f = BaseField::make(2);
  const Vec b{1, 0, 1, 1};
  auto sol = solve_linear(f, LinearSystem{Matrix::identity(4), b});
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->particular, b);
  EXPECT_TRUE(sol->kernel.empty());
}

TEST(SolveLinear, InconsistentSystem) {
  const BaseField f = BaseField::make(2);
  Matrix m(2, 2);
  m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 1;
  EXPECT_FALSE(solve_linear(f, LinearSystem{m, Vec{1, 0}}));
}

class RandomSystems : public ::testing::TestWithParam<unsigned> {};

TEST_P(RandomSystems, ConsistentSolutionsVerify) {
  const BaseField f = BaseField::make(GetParam());
  Rng rng(GetParam());
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 20;
    // Rank-deficient on purpose in half of the trials.
    Matrix m = random_matrix(f, n, n, rng);
    if (trial % 2 == 0)
      for (std::size_t c = 0; c < n; ++c) m(n - 1, c) = f.add(m(0, c), m(1, c));
    const Vec x = random_vector(f, n, rng);
    const Vec b = multiply(f, m, x);
    auto sol = solve_linear(f, LinearSystem{m, b});
    ASSERT_TRUE(sol);
    const std::size_t r = oracle_rank(f, m);
    EXPECT_EQ(sol->kernel.size(), n - r);
    EXPECT_EQ(multiply(f, m, sol->particular), b);
    for (const Vec& k : sol->kernel) EXPECT_TRUE(is_zero(multiply(f, m, k)));
    for (int s = 0; s < 10; ++s) EXPECT_EQ(multiply(f, m, sol->sample(f, rng)), b);
  }
}

TEST_P(RandomSystems, RankMatchesOracle) {
  const BaseField f = BaseField::make(GetParam());
  Rng rng(GetParam() * 7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 5 + rng.uniform(70), cols = 5 + rng.uniform(70);
    Matrix m = random_matrix(f, rows, cols, rng);
    if (rows > 2)
      for (std::size_t c = 0; c < cols; ++c) m(2, c) = f.add(m(0, c), m(1, c));
    EXPECT_EQ(rank(f, m), oracle_rank(f, m));
  }
}

TEST_P(RandomSystems, InverseRoundTrip) {
  const BaseField f = BaseField::make(GetParam());
  Rng rng(GetParam() * 13);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = random_invertible(f, 12, rng);
    const Matrix inv = invert(f, m);
    EXPECT_EQ(multiply(f, m, inv), Matrix::identity(12));
    EXPECT_EQ(multiply(f, inv, m), Matrix::identity(12));
  }
}

INSTANTIATE_TEST_SUITE_P(Orders, RandomSystems, ::testing::Values(2, 3, 4, 7, 16));

TEST(Nullspace, IdentityAndZero) {
  const BaseField f = BaseField::make(2);
  EXPECT_TRUE(nullspace(f, Matrix::identity(5)).empty());
  const auto basis = nullspace(f, Matrix(3, 4));
  ASSERT_EQ(basis.size(), 4U);
  for (std::size_t i = 0; i < 4; ++i) {
    Vec e(4, 0);
    e[i] = 1;
    EXPECT_EQ(basis[i], e);
  }
}

TEST(Nullspace, RankDeficientGf2) {
  const BaseField f = BaseField::make(2);
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 10 + rng.uniform(60), cols = 10 + rng.uniform(100);
    Matrix m = random_matrix(f, rows, cols, rng);
    for (std::size_t r = rows / 2; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = f.add(m(r - rows / 2, c), m(0, c));
    const auto basis = nullspace(f, m);
    EXPECT_EQ(basis.size(), cols - oracle_rank(f, m));
    for (const Vec& v : basis) EXPECT_TRUE(is_zero(multiply(f, m, v)));
    // Independence: stacking the basis gives full row rank.
    Matrix stack(basis.size(), cols);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t c = 0; c < cols; ++c) stack(i, c) = basis[i][c];
    EXPECT_EQ(oracle_rank(f, stack), basis.size());
  }
}

TEST(Invert, SingularThrows) {
  const BaseField f = BaseField::make(2);
  Matrix m(2, 2);
  m(0, 0) = m(1, 0) = 1;
  try {
    invert(f, m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
}

}  // namespace
}  // namespace hpe
