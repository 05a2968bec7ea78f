#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "liemult/latcount.hpp"

using namespace liemult;

namespace {

// Brute-force count over the box 0 <= x_j <= ub_j (all variables sign-constrained).
Integer brute_force(const IntMatrix& a, const IntVector& b, const std::vector<long>& ub) {
  const std::size_t n = a.cols();
  std::vector<long> x(n, 0);
  Integer total = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == n) {
      for (std::size_t i = 0; i < a.rows(); ++i) {
        Integer s = 0;
        for (std::size_t k = 0; k < n; ++k) s += a(i, k) * x[k];
        if (s != b[i]) return;
      }
      ++total;
      return;
    }
    for (x[j] = 0; x[j] <= ub[j]; ++x[j]) rec(j + 1);
  };
  rec(0);
  return total;
}

// Bounds from a strictly positive integer combination of the rows, if one exists.
std::optional<std::vector<long>> positive_row_bounds(const IntMatrix& a, const IntVector& b) {
  for (long u0 = -3; u0 <= 3; ++u0)
    for (long u1 = -3; u1 <= 3; ++u1) {
      std::vector<long> w(a.cols());
      bool ok = true;
      for (std::size_t j = 0; j < a.cols() && ok; ++j) {
        w[j] = u0 * a(0, j).get_si() + (a.rows() > 1 ? u1 * a(1, j).get_si() : 0);
        ok = w[j] > 0;
      }
      if (!ok) continue;
      long rhs = u0 * b[0].get_si() + (a.rows() > 1 ? u1 * b[1].get_si() : 0);
      std::vector<long> ub(a.cols());
      for (std::size_t j = 0; j < a.cols(); ++j) ub[j] = rhs < 0 ? -1 : rhs / w[j];
      return ub;
    }
  return std::nullopt;
}

}  // namespace

TEST(Latcount, Instantiate) {
  ParametricPolytope p{IntMatrix{{1, 1}}, IntMatrix{{1}}, 2};
  auto q = instantiate(p, to_integers({3}));
  EXPECT_EQ(q.b, to_integers({3}));
  EXPECT_EQ(instantiate(p, to_integers({0})).b, to_integers({0}));
  EXPECT_THROW(instantiate(p, to_integers({1, 2})), InputError);
}

TEST(Latcount, SmallExamples) {
  ConcretePolytope seg{IntMatrix{{1, 1}}, to_integers({3}), 2};
  EXPECT_EQ(count_enumeration(seg), 4);
  EXPECT_EQ(count_barvinok(seg), 4);
  ConcretePolytope tri{IntMatrix{{1, 1, 1}}, to_integers({3}), 3};
  EXPECT_EQ(count_enumeration(tri), 10);
  EXPECT_EQ(count_barvinok(tri), 10);
  EXPECT_EQ(brute_force(tri.A, tri.b, {3, 3, 3}), 10);
  ConcretePolytope none{IntMatrix{{2}}, to_integers({1}), 1};
  EXPECT_EQ(count_enumeration(none), 0);
  EXPECT_EQ(count_barvinok(none), 0);
}

TEST(Latcount, DilatedSimplexClosedForm) {
  for (long k : {0L, 1L, 7L, 1000000L, 1000000000L}) {
    ConcretePolytope q{IntMatrix{{1, 1, 1}}, to_integers({k}), 3};
    Integer kk = k;
    EXPECT_EQ(count_barvinok(q), (kk + 1) * (kk + 2) / 2) << k;
  }
  ConcretePolytope q4{IntMatrix{{1, 1, 1, 1, 1}}, to_integers({1000000000L}), 5};
  EXPECT_EQ(count_barvinok(q4), binomial(Integer(1000000004), 4));
}

TEST(Latcount, HugeCountsUseExactArithmetic) {
  // Bounding boxes past 2^500 points cannot be recovered from the word-sized residues.
  Integer k;
  mpz_ui_pow_ui(k.get_mpz_t(), 10, 200);
  ConcretePolytope q{IntMatrix{{1, 1, 1, 1}}, IntVector{k}, 4};
  EXPECT_EQ(count_barvinok(q), binomial(k + 3, 3));
  ConcretePolytope cube{IntMatrix{{1, 1, 0, 0, 0, 0}, {0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 1, 1}}, IntVector{k, k, 2}, 6};
  EXPECT_EQ(count_barvinok(cube), (k + 1) * (k + 1) * 3);
}

TEST(Latcount, UnboundedAndFree) {
  ConcretePolytope ray{IntMatrix{{1, -1}}, to_integers({0}), 2};
  EXPECT_THROW(count_enumeration(ray), CountError);
  EXPECT_THROW(count_barvinok(ray), CountError);
  // x1 + x2 + f = 3 with f free forced to 3 - x1 - x2 and f = x1.
  ConcretePolytope mixed{IntMatrix{{1, 1, 1}, {1, 0, -1}}, to_integers({3, 0}), 2};
  EXPECT_EQ(count_enumeration(mixed), 2);  // (0,3,0), (1,1,1)
  EXPECT_EQ(count_barvinok(mixed), 2);
  ConcretePolytope line{IntMatrix{{1, 0, 0}}, to_integers({2}), 1};
  EXPECT_THROW(count_enumeration(line), CountError);
}

TEST(Latcount, LowerDimensionalFiber) {
  // x1 + x2 + x3 = 2 and x1 + x2 = 2 force x3 = 0 (implicit equality).
  ConcretePolytope q{IntMatrix{{1, 1, 1}, {1, 1, 0}}, to_integers({2, 2}), 3};
  EXPECT_EQ(count_barvinok(q), 3);
  EXPECT_EQ(count_enumeration(q), 3);
}

TEST(Latcount, DegenerateVertices) {
  // Octahedron-like slices give vertices where more than d facets meet.
  ConcretePolytope q{IntMatrix{{1, 1, 1, 1}, {1, 1, 0, 0}}, to_integers({4, 2}), 4};
  EXPECT_EQ(count_barvinok(q), 9);
  ConcretePolytope pyr{IntMatrix{{1, 1, 1, 1, 1, 0}, {1, -1, 1, -1, 0, 1}}, to_integers({6, 0}), 6};
  EXPECT_EQ(count_barvinok(pyr), count_enumeration(pyr));
}

TEST(Latcount, BackendEquivalenceRandom) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> entry(-5, 5), rhs(0, 20);
  int checked = 0;
  for (int trial = 0; checked < 200 && trial < 20000; ++trial) {
    IntMatrix a(2, 4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = entry(rng);
    IntVector b = to_integers({rhs(rng), rhs(rng)});
    auto ub = positive_row_bounds(a, b);
    if (!ub) continue;
    ConcretePolytope q{a, b, 4};
    Integer expected = brute_force(a, b, *ub);
    ASSERT_EQ(count_enumeration(q), expected) << to_string(a) << " b=" << to_string(b);
    ASSERT_EQ(count_barvinok(q), expected) << to_string(a) << " b=" << to_string(b);
    ++checked;
  }
  EXPECT_EQ(checked, 200);
}

TEST(Latcount, DecompositionConesAreUnimodular) {
  // 2x + 3y <= 12, x, y >= 0 in inequality form N t >= c.
  IntMatrix n{{1, 0}, {0, 1}, {-2, -3}};
  IntVector c = to_integers({0, 0, -12});
  auto cones = unimodular_decomposition(n, c);
  EXPECT_GE(cones.size(), 3u);
  for (const auto& cone : cones) EXPECT_EQ(abs(determinant(cone.generators)), 1);
}

TEST(Latcount, AutoDispatch) {
  ConcretePolytope small{IntMatrix{{1, 1, 1}}, to_integers({3}), 3};
  EXPECT_EQ(count(small).backend, UsedBackend::enumeration);
  ConcretePolytope huge{IntMatrix{{1, 1, 1}}, to_integers({1000000}), 3};
  auto r = count(huge);
  EXPECT_EQ(r.backend, UsedBackend::barvinok);
  EXPECT_EQ(r.value, Integer(500001500001L));
}

TEST(Latcount, FiberCounterMatchesCount) {
  // 2x2 contingency tables with fixed margins.
  IntMatrix a{{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}};
  FiberCounter fc(a, 4);
  for (long r1 = 0; r1 <= 4; ++r1)
    for (long c1 = 0; c1 <= 4; ++c1) {
      IntVector b = to_integers({r1, 4 - r1, c1, 4 - c1});
      EXPECT_EQ(fc.count(b).value, count(ConcretePolytope{a, b, 4}).value);
    }
}
