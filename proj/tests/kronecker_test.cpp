#include <gtest/gtest.h>

#include <random>

#include "liemult/kronecker.hpp"
#include "reference.hpp"

using namespace liemult;

namespace {

YoungDiagram yd(std::vector<long> parts) { return YoungDiagram(std::move(parts)); }

Integer g(const YoungDiagram& l, const YoungDiagram& m, const YoungDiagram& n, KroneckerCache* cache = nullptr) {
  return kronecker_coefficient({l, m, n, {}, {}, {}}, {}, cache).value;
}

YoungDiagram random_two_row(std::mt19937_64& rng, long k) {
  long second = static_cast<long>(rng() % (k / 2 + 1));
  return yd({k - second, second});
}

}  // namespace

TEST(Kronecker, Examples) {
  EXPECT_EQ(g(yd({2, 1}), yd({2, 1}), yd({2, 1})), 1);
  EXPECT_EQ(g(yd({1}), yd({1}), yd({1})), 1);
  EXPECT_EQ(g(yd({2}), yd({2}), yd({1, 1})), 0);
  EXPECT_EQ(g(yd({3, 2, 1}), yd({3, 2, 1}), yd({3, 2, 1})), 5);
  EXPECT_EQ(g(yd({}), yd({}), yd({})), 1);
  EXPECT_EQ(g(yd({2}), yd({1, 1}), yd({1, 1})), 1);
}

TEST(Kronecker, MatchesCharacterTable) {
  KroneckerCache cache;
  for (long k = 1; k <= 6; ++k) {
    auto ps = ref::partitions(k);
    for (const auto& a : ps)
      for (const auto& b : ps)
        for (const auto& c : ps) EXPECT_EQ(g(yd(a), yd(b), yd(c), &cache), ref::kronecker(a, b, c)) << k;
  }
}

TEST(Kronecker, PermutationSymmetry) {
  KroneckerCache cache;
  for (long k = 1; k <= 5; ++k) {
    auto ps = partitions(k);
    for (const auto& a : ps)
      for (const auto& b : ps)
        for (const auto& c : ps) {
          Integer v = g(a, b, c, &cache);
          EXPECT_EQ(g(b, a, c, &cache), v);
          EXPECT_EQ(g(c, b, a, &cache), v);
          EXPECT_EQ(g(a, c, b, &cache), v);
          EXPECT_EQ(g(a.conjugate(), b.conjugate(), c, &cache), v);
        }
  }
}

TEST(Kronecker, RowBoundIndependence) {
  KroneckerCache cache;
  for (long k = 1; k <= 5; ++k) {
    auto ps = partitions(k);
    for (const auto& a : ps)
      for (const auto& b : ps)
        for (const auto& c : ps) {
          Integer v = g(a, b, c, &cache);
          for (std::size_t pad : {1u, 2u}) {
            KroneckerQuery q{a, b, c, a.rows() + pad, b.rows() + pad, c.rows() + pad};
            EXPECT_EQ(kronecker_coefficient(q, {}, &cache).value, v);
          }
        }
  }
}

TEST(Kronecker, OneRowIdentity) {
  KroneckerCache cache;
  for (long k = 1; k <= 7; ++k) {
    auto ps = partitions(k);
    for (const auto& a : ps)
      for (const auto& b : ps) EXPECT_EQ(g(a, b, yd({k}), &cache), a == b ? 1 : 0);
  }
}

TEST(Kronecker, SquareTwoRowShapes) {
  // g((n,n),(n,n),(n,n)) is 1 for even n and 0 for odd n.
  KroneckerCache cache;
  for (long n : {1L, 2L, 3L, 4L, 50L, 51L, 1000L, 1001L})
    EXPECT_EQ(g(yd({n, n}), yd({n, n}), yd({n, n}), &cache), n % 2 == 0 ? 1 : 0) << n;
}

TEST(Kronecker, TwoRowLargeK) {
  // Random two-row triples at moderate k against the sum over table counts
  // evaluated independently of the coefficient code.
  std::mt19937_64 rng(3);
  KroneckerCache cache;
  for (int trial = 0; trial < 10; ++trial) {
    const long k = 20 + static_cast<long>(rng() % 30);
    YoungDiagram a = random_two_row(rng, k), b = random_two_row(rng, k), c = random_two_row(rng, k);
    // g = sum over w in S_2^3 of sign * #tables with margins lambda + rho - w rho.
    Integer expected = 0;
    for (int mask = 0; mask < 8; ++mask) {
      std::array<IntVector, 3> delta;
      int sign = 1;
      const YoungDiagram* ys[3] = {&a, &b, &c};
      for (int i = 0; i < 3; ++i) {
        if (mask >> i & 1) {
          delta[i] = to_integers({(*ys[i])[1] - 1, (*ys[i])[0] + 1});
          sign = -sign;
        } else {
          delta[i] = to_integers({(*ys[i])[0], (*ys[i])[1]});
        }
      }
      expected += sign * sym_weight_count(k, delta);
    }
    EXPECT_EQ(g(a, b, c, &cache), expected);
  }
}

TEST(Kronecker, TableCounts) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t a = 1 + rng() % 3, b = 1 + rng() % 3, c = 1 + rng() % 2;
    long k = static_cast<long>(rng() % 6);
    auto margin = [&](std::size_t n) {
      ref::Rows r(n, 0);
      for (long i = 0; i < k; ++i) ++r[rng() % n];
      return r;
    };
    ref::Rows x = margin(a), y = margin(b), z = margin(c);
    auto as_int = [](const ref::Rows& r) { return IntVector(r.begin(), r.end()); };
    EXPECT_EQ(sym_weight_count(k, {as_int(x), as_int(y), as_int(z)}), ref::tables(x, y, z));
  }
  EXPECT_EQ(sym_weight_count(2, {to_integers({2}), to_integers({2}), to_integers({2})}), 1);
  EXPECT_EQ(sym_weight_count(2, {to_integers({1, 1}), to_integers({1, 1}), to_integers({2})}), 2);
  // Summing over all weights gives dim Sym^k = C(k + abc - 1, abc - 1).
  for (long k = 0; k <= 4; ++k) {
    Integer total = 0;
    std::function<void(std::size_t, std::array<IntVector, 3>&)> rec;
    std::array<IntVector, 3> delta;
    rec = [&](std::size_t block, std::array<IntVector, 3>& d) {
      if (block == 3) {
        total += sym_weight_count(k, d);
        return;
      }
      for (long first = 0; first <= k; ++first) {
        d[block] = to_integers({first, k - first});
        rec(block + 1, d);
      }
    };
    rec(0, delta);
    Integer expected;
    mpz_bin_uiui(expected.get_mpz_t(), k + 7, 7);
    EXPECT_EQ(total, expected) << k;
  }
  EXPECT_EQ(sym_weight_count(2, {to_integers({3, -1}), to_integers({2}), to_integers({2})}), 0);
  EXPECT_EQ(sym_weight_count(2, {to_integers({1}), to_integers({2}), to_integers({2})}), 0);
}

TEST(Kronecker, MapLayout) {
  RestrictionMap m = kronecker_map(2, 3, 2);
  EXPECT_EQ(m.target.rank, 12u);
  EXPECT_EQ(m.source.rank, 7u);
  // Column (l, j, n) = (1, 2, 0) has index (1 * 3 + 2) * 2 + 0 = 10.
  for (std::size_t r = 0; r < 7; ++r) EXPECT_EQ(m.matrix(r, 10), (r == 1 || r == 4 || r == 5) ? 1 : 0) << r;
  EXPECT_THROW(kronecker_map(0, 1, 1), InputError);
  // e_(1,2,2) in 1-based indices for a = b = c = 2 maps to ((1,0),(0,1),(0,1)).
  RestrictionMap m2 = kronecker_map(2, 2, 2);
  const std::size_t col = (0 * 2 + 1) * 2 + 1;
  IntVector image(6);
  for (std::size_t r = 0; r < 6; ++r) image[r] = m2.matrix(r, col);
  EXPECT_EQ(image, to_integers({1, 0, 0, 1, 0, 1}));
  for (std::size_t j = 0; j < 8; ++j) {
    Integer ones = 0;
    for (std::size_t r = 0; r < 6; ++r) ones += m2.matrix(r, j);
    EXPECT_EQ(ones, 3);
  }
  EXPECT_EQ(kronecker_map(1, 1, 1).matrix, (IntMatrix{{1}, {1}, {1}}));
}

TEST(Kronecker, Errors) {
  EXPECT_THROW(g(yd({2}), yd({1}), yd({1})), InputError);
  KroneckerQuery tight{yd({2, 1}), yd({2, 1}), yd({2, 1}), 1, 2, 2};
  EXPECT_THROW(kronecker_coefficient(tight), InputError);
  KroneckerQuery big{yd({11}), yd({11}), yd({11}), 11, 11, 11};
  EXPECT_THROW(kronecker_coefficient(big), LimitError);
}

TEST(Kronecker, SweepMatchesSingleQueries) {
  auto sweep = kronecker_sweep(yd({3, 1}), yd({2, 2}), yd({2, 1, 1}), {1, 2, 3, 4});
  ASSERT_EQ(sweep.size(), 4u);
  for (long k = 1; k <= 4; ++k)
    EXPECT_EQ(sweep[k - 1].value, g(yd({3 * k, k}), yd({2 * k, 2 * k}), yd({2 * k, k, k})));
  EXPECT_THROW(kronecker_sweep(yd({1}), yd({1}), yd({1}), {0}), InputError);
  EXPECT_TRUE(kronecker_sweep(yd({1}), yd({1}), yd({1}), {}).empty());
  auto ones = kronecker_sweep(yd({1}), yd({1}), yd({1}), {1, 2, 3, 4, 5});
  for (const auto& r : ones) EXPECT_EQ(r.value, 1);
  auto s2 = kronecker_sweep(yd({1, 1}), yd({1, 1}), yd({2}), {1, 2, 3, 4, 5});
  for (long k = 1; k <= 5; ++k) EXPECT_EQ(s2[k - 1].value, ref::kronecker({k, k}, {k, k}, {2 * k})) << k;
}

TEST(Kronecker, ThreadsDoNotChangeResults) {
  KroneckerOptions many;
  many.threads = 3;
  KroneckerQuery q{yd({4, 2, 1}), yd({3, 3, 1}), yd({3, 2, 2}), {}, {}, {}};
  EXPECT_EQ(kronecker_coefficient(q, many).value, kronecker_coefficient(q).value);
}
