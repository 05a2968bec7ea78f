#include <gtest/gtest.h>

#include <random>

#include "liemult/lattice.hpp"
#include "liemult/lp.hpp"

using namespace liemult;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

}  // namespace

TEST(Arith, DeterminantAndInverse) {
  IntMatrix m{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  EXPECT_EQ(determinant(m), 18);
  RatMatrix inv = inverse(m);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < 3; ++k) s += Rational(m(i, k)) * inv(k, j);
      EXPECT_EQ(s, i == j ? 1 : 0);
    }
  EXPECT_EQ(rank(IntMatrix{{1, 2}, {2, 4}}), 1u);
}

TEST(Arith, UnimodularSolve) {
  IntMatrix m{{1, 2}, {1, 3}};
  IntVector rhs = to_integers({5, 7});
  IntVector x = solve_transposed_unimodular(m, rhs);
  // m^T x = rhs
  EXPECT_EQ(m(0, 0) * x[0] + m(1, 0) * x[1], 5);
  EXPECT_EQ(m(0, 1) * x[0] + m(1, 1) * x[1], 7);
}

TEST(Lattice, SolveRandomSystems) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 3, c = r + rng() % 4;
    IntMatrix a = random_matrix(rng, r, c, -6, 6);
    IntVector x(c);
    for (auto& v : x) v = static_cast<long>(rng() % 11) - 5;
    IntVector b = a * x;
    auto sol = solve_integer_system(a, b);
    ASSERT_TRUE(sol);
    EXPECT_EQ(a * sol->particular, b);
    IntMatrix ak = a * sol->kernel;
    for (const auto& v : ak.data()) EXPECT_EQ(v, 0);
    EXPECT_EQ(sol->kernel.cols(), c - rank(a));
    // x - x0 must lie in the integer span of the kernel basis.
    IntVector diff(c);
    for (std::size_t i = 0; i < c; ++i) diff[i] = x[i] - sol->particular[i];
    if (sol->kernel.cols() == 0) {
      for (const auto& v : diff) EXPECT_EQ(v, 0);
      continue;
    }
    IntMatrix aug(c, sol->kernel.cols() + 1);
    for (std::size_t i = 0; i < c; ++i) {
      for (std::size_t j = 0; j < sol->kernel.cols(); ++j) aug(i, j) = sol->kernel(i, j);
      aug(i, sol->kernel.cols()) = -diff[i];
    }
    IntVector zero(c, Integer(0));
    auto coords = solve_integer_system(aug, zero);
    bool found = false;
    for (std::size_t k = 0; k < coords->kernel.cols() && !found; ++k)
      found = abs(coords->kernel(sol->kernel.cols(), k)) == 1;
    EXPECT_TRUE(found);
  }
}

TEST(Lattice, NoIntegerSolution) {
  IntMatrix a{{2}};
  IntVector b = to_integers({1});
  EXPECT_FALSE(solve_integer_system(a, b));
  IntMatrix a2{{1, 1}, {1, 1}};
  EXPECT_FALSE(solve_integer_system(a2, to_integers({1, 2})));
}

TEST(Lattice, LllReducesKnownBasis) {
  IntMatrix b{{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}};
  IntMatrix r = lll_reduce(b);
  EXPECT_EQ(abs(determinant(r)), abs(determinant(b)));
  Integer n0 = 0;
  for (std::size_t j = 0; j < 3; ++j) n0 += r(0, j) * r(0, j);
  EXPECT_LE(n0, 3);
}

TEST(Simplex, FeasibilityAndOptimum) {
  // x1 + x2 + x3 = 4, x1 - x2 = 1
  IntMatrix a{{1, 1, 1}, {1, -1, 0}};
  IntVector b = to_integers({4, 1});
  Simplex lp(a, b);
  ASSERT_TRUE(lp.find_feasible());
  RatVector c{Rational(0), Rational(0), Rational(1)};
  EXPECT_EQ(lp.maximize(c), Simplex::Status::optimal);
  EXPECT_EQ(lp.objective(c), 3);
  RatVector c2{Rational(1), Rational(0), Rational(0)};
  EXPECT_EQ(lp.maximize(c2), Simplex::Status::optimal);
  EXPECT_EQ(lp.objective(c2), Rational(5, 2));
}

TEST(Simplex, InfeasibleAndUnbounded) {
  IntMatrix a{{1, 1}};
  Simplex bad(a, to_integers({-1}));
  EXPECT_FALSE(bad.find_feasible());
  IntMatrix a2{{1, -1}};
  Simplex open(a2, to_integers({0}));
  ASSERT_TRUE(open.find_feasible());
  RatVector c{Rational(1), Rational(0)};
  EXPECT_EQ(open.maximize(c), Simplex::Status::unbounded);
}

TEST(Simplex, RedundantRowsDropped) {
  IntMatrix a{{1, 1, 0}, {2, 2, 0}, {0, 0, 1}};
  Simplex lp(a, to_integers({2, 4, 1}));
  ASSERT_TRUE(lp.find_feasible());
  EXPECT_EQ(lp.basis().size(), 2u);
}

TEST(Arith, AdjugateRandom) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 7;
    int span = trial % 2 ? 3 : 1000000;
    IntMatrix m = random_matrix(rng, n, n, -span, span);
    Integer det = determinant(m);
    if (det == 0) continue;
    IntMatrix adj;
    EXPECT_EQ(adjugate(m, adj), det);
    IntMatrix prod = adj * m;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(prod(i, j), i == j ? det : Integer(0));
  }
  IntMatrix big{{1, 1}, {1, 2}};
  big(0, 0) = Integer("100000000000000000000");
  IntMatrix adj;
  EXPECT_EQ(adjugate(big, adj), Integer("200000000000000000000") - 1);
}
