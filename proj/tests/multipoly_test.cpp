#include "hpe/multipoly.hpp"

#include <gtest/gtest.h>

namespace hpe {
namespace {

MultiPoly random_poly(const BaseField& f, std::size_t nvars, std::size_t terms, unsigned max_exp, Rng& rng) {
  MultiPoly p(nvars);
  for (std::size_t t = 0; t < terms; ++t) {
    Monomial m(nvars);
    for (auto& e : m) e = static_cast<std::uint32_t>(rng.uniform(max_exp + 1));
    p.add_term(f, m, static_cast<Fq>(rng.uniform(f.q())));
  }
  return p;
}

Vec random_point(const BaseField& f, std::size_t n, Rng& rng) { return random_vector(f, n, rng); }

TEST(MultiPoly, AddZeroIsIdentity) {
  const BaseField f = BaseField::make(2);
  Rng rng(1);
  const MultiPoly p = random_poly(f, 4, 10, 3, rng);
  EXPECT_EQ(add(f, p, MultiPoly(4)), p);
}

TEST(MultiPoly, SquareOfSumInCharacteristicTwo) {
  const BaseField f = BaseField::make(2);
  const MultiPoly s = add(f, MultiPoly::variable(2, 0), MultiPoly::variable(2, 1));
  MultiPoly expect(2);
  expect.add_term(f, {2, 0}, 1);
  expect.add_term(f, {0, 2}, 1);
  EXPECT_EQ(mul(f, s, s), expect);
}

TEST(MultiPoly, MismatchedVariablesThrow) {
  const BaseField f = BaseField::make(2);
  try {
    add(f, MultiPoly(2), MultiPoly(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::VariableMismatch);
  }
}

class EvalOracle : public ::testing::TestWithParam<unsigned> {};

TEST_P(EvalOracle, ArithmeticAgreesWithEvaluation) {
  const BaseField f = BaseField::make(GetParam());
  Rng rng(GetParam());
  for (int trial = 0; trial < 20; ++trial) {
    const MultiPoly a = random_poly(f, 4, 8, 3, rng), b = random_poly(f, 4, 8, 3, rng);
    const Fq s = static_cast<Fq>(rng.uniform(f.q()));
    const MultiPoly prod = mul(f, a, b), sum = add(f, a, b), scaled = scale(f, s, a), diff = sub(f, a, b);
    for (int k = 0; k < 100; ++k) {
      const Vec pt = random_point(f, 4, rng);
      const Fq ea = a.eval(f, pt), eb = b.eval(f, pt);
      ASSERT_EQ(prod.eval(f, pt), f.mul(ea, eb));
      ASSERT_EQ(sum.eval(f, pt), f.add(ea, eb));
      ASSERT_EQ(diff.eval(f, pt), f.sub(ea, eb));
      ASSERT_EQ(scaled.eval(f, pt), f.mul(s, ea));
      ASSERT_EQ(normalize_exponents(f, prod).eval(f, pt), f.mul(ea, eb));
    }
    if (!a.is_zero() && !b.is_zero() && f.q() > 2) {
      // Over a field there are no zero divisors, so degrees add.
      EXPECT_EQ(prod.total_degree(), a.total_degree() + b.total_degree());
    }
  }
}

TEST_P(EvalOracle, SubstituteAffineAgreesWithEvaluation) {
  const BaseField f = BaseField::make(GetParam());
  Rng rng(GetParam() + 100);
  for (int trial = 0; trial < 10; ++trial) {
    // Variables 0..2 are substituted, 3..4 stay.
    const MultiPoly p = random_poly(f, 5, 12, 2, rng);
    const Matrix M = random_invertible(f, 3, rng);
    const Vec c = random_vector(f, 3, rng);
    const MultiPoly s = substitute_affine(f, p, M, c, VarBlock{0, 3});
    EXPECT_LE(s.total_degree(), p.total_degree());
    for (int k = 0; k < 100; ++k) {
      Vec pt = random_point(f, 5, rng);
      const Vec block(pt.begin(), pt.begin() + 3);
      const Vec image = add(f, multiply(f, M, block), c);
      Vec mapped = pt;
      std::copy(image.begin(), image.end(), mapped.begin());
      ASSERT_EQ(s.eval(f, pt), p.eval(f, mapped));
    }
    // Substituting the inverse map recovers p.
    const Matrix Minv = invert(f, M);
    Vec back = multiply(f, Minv, c);
    for (auto& v : back) v = f.neg(v);
    EXPECT_EQ(substitute_affine(f, s, Minv, back, VarBlock{0, 3}), p);
  }
}

INSTANTIATE_TEST_SUITE_P(Orders, EvalOracle, ::testing::Values(2, 3, 4, 5));

TEST(SubstituteAffine, IdentityIsNoOp) {
  const BaseField f = BaseField::make(2);
  Rng rng(5);
  const MultiPoly p = random_poly(f, 3, 10, 3, rng);
  EXPECT_EQ(substitute_affine(f, p, Matrix::identity(3), Vec(3, 0), VarBlock{0, 3}), p);
}

TEST(SubstituteAffine, SmallExample) {
  const BaseField f = BaseField::make(2);
  Matrix M(2, 2);
  M(0, 0) = M(0, 1) = M(1, 1) = 1;
  const MultiPoly u1 = MultiPoly::variable(2, 0);
  MultiPoly expect(2);
  expect.add_term(f, {1, 0}, 1);
  expect.add_term(f, {0, 1}, 1);
  expect.add_term(f, {0, 0}, 1);
  EXPECT_EQ(substitute_affine(f, u1, M, Vec{1, 0}, VarBlock{0, 2}), expect);
}

TEST(SubstituteAffine, SingularThrows) {
  const BaseField f = BaseField::make(2);
  Matrix M(2, 2);
  M(0, 0) = M(1, 0) = 1;
  try {
    substitute_affine(f, MultiPoly::variable(2, 0), M, Vec{0, 0}, VarBlock{0, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
}

TEST(MultiPoly, NormalizeFoldsExponents) {
  const BaseField f = BaseField::make(3);
  MultiPoly p(2);
  p.add_term(f, {5, 3}, 1);  // x^5 y^3 -> x^1 y^1 on F_3
  p.add_term(f, {1, 1}, 1);
  MultiPoly expect(2);
  expect.add_term(f, {1, 1}, 2);
  EXPECT_EQ(normalize_exponents(f, p), expect);
}

}  // namespace
}  // namespace hpe
