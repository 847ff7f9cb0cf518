#include "tarski/linalg.hpp"

#include <gtest/gtest.h>

namespace tarski {
namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

TEST(SolveExact, UniqueSolution) {
  RationalMatrix a(2, 2);
  a << q(2), q(1), q(1), q(3);
  RationalVector b(2);
  b << q(3), q(5);
  auto x = solve_exact<Rational>(a, b);
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], q(4, 5));
  EXPECT_EQ((*x)[1], q(7, 5));
}

TEST(SolveExact, OverdeterminedConsistentAndNot) {
  RationalMatrix a(3, 1);
  a << q(1), q(2), q(3);
  RationalVector b(3);
  b << q(2), q(4), q(6);
  ASSERT_TRUE(solve_exact<Rational>(a, b));
  b[2] = q(7);
  EXPECT_FALSE(solve_exact<Rational>(a, b));
}

TEST(SolveExact, RankDeficientIsRejected) {
  RationalMatrix a(2, 2);
  a << q(1), q(2), q(2), q(4);
  RationalVector b(2);
  b << q(1), q(2);
  EXPECT_FALSE(solve_exact<Rational>(a, b));
}

TEST(SimplexMax, TextbookProgram) {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), value 36.
  RationalMatrix a(3, 2);
  a << q(1), q(0), q(0), q(2), q(3), q(2);
  RationalVector b(3), c(2);
  b << q(4), q(12), q(18);
  c << q(3), q(5);
  auto s = simplex_max(a, b, c);
  EXPECT_EQ(s.objective, q(36));
  EXPECT_EQ(s.primal[0], q(2));
  EXPECT_EQ(s.primal[1], q(6));
  // Strong duality: b^T y equals the optimum.
  EXPECT_EQ(b.dot(s.dual), q(36));
  EXPECT_EQ(s.dual[0], q(0));
  EXPECT_EQ(s.dual[1], q(3, 2));
  EXPECT_EQ(s.dual[2], q(1));
}

TEST(SimplexMax, DegenerateProgramTerminates) {
  // Degenerate vertex at the origin; Bland's rule must not cycle.
  RationalMatrix a(3, 4);
  a << q(1, 2), q(-11, 2), q(-5, 2), q(9), q(1, 2), q(-3, 2), q(-1, 2), q(1), q(1), q(0), q(0), q(0);
  RationalVector b(3), c(4);
  b << q(0), q(0), q(1);
  c << q(10), q(-57), q(-9), q(-24);
  auto s = simplex_max(a, b, c);
  EXPECT_EQ(s.objective, q(1));
}

TEST(SimplexMax, UnboundedThrows) {
  RationalMatrix a(1, 2);
  a << q(1), q(-1);
  RationalVector b(1), c(2);
  b << q(1);
  c << q(0), q(1);
  EXPECT_THROW(simplex_max(a, b, c), std::runtime_error);
}

}  // namespace
}  // namespace tarski
