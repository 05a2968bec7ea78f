#include <gtest/gtest.h>

#include "liemult/multiplicity.hpp"
#include "liemult/oracle.hpp"
#include "reference.hpp"

using namespace liemult;

TEST(Oracle, CharactersMatchDeterminantalFormula) {
  for (long k = 1; k <= 7; ++k)
    for (const auto& l : partitions(k))
      for (const auto& t : partitions(k)) EXPECT_EQ(mn_character(l, t), ref::character(l.parts(), t.parts()));
}

TEST(Oracle, Orthogonality) {
  for (long k = 1; k <= 7; ++k) {
    auto ps = partitions(k);
    Integer classes = 0;
    for (const auto& t : ps) classes += class_size(t);
    EXPECT_EQ(classes, factorial(k));
    for (const auto& a : ps)
      for (const auto& b : ps) {
        Integer s = 0;
        for (const auto& t : ps) s += class_size(t) * mn_character(a, t) * mn_character(b, t);
        EXPECT_EQ(s, a == b ? factorial(k) : Integer(0));
      }
    // Column orthogonality at the identity: sum of squared degrees is k!.
    Integer deg2 = 0;
    YoungDiagram id(std::vector<long>(k, 1));
    for (const auto& a : ps) deg2 += mn_character(a, id) * mn_character(a, id);
    EXPECT_EQ(deg2, factorial(k));
  }
}

TEST(Oracle, KroneckerOracle) {
  for (long k = 1; k <= 5; ++k) {
    auto ps = ref::partitions(k);
    for (const auto& a : ps)
      for (const auto& b : ps)
        for (const auto& c : ps)
          EXPECT_EQ(kronecker_oracle(YoungDiagram(a), YoungDiagram(b), YoungDiagram(c)), ref::kronecker(a, b, c));
  }
  EXPECT_THROW(kronecker_oracle(YoungDiagram({11}), YoungDiagram({11}), YoungDiagram({11})), LimitError);
  EXPECT_THROW(kronecker_oracle(YoungDiagram({2}), YoungDiagram({1}), YoungDiagram({1})), InputError);
  EXPECT_THROW(mn_character(YoungDiagram({2}), YoungDiagram({1})), InputError);
}

TEST(Oracle, WeightSystemsAreKostkaNumbers) {
  for (std::size_t d = 1; d <= 4; ++d)
    for (long k = 0; k <= 4; ++k)
      for (const auto& p : ref::partitions(k, d)) {
        Weight lambda(d, Integer(0));
        for (std::size_t i = 0; i < p.size(); ++i) lambda[i] = p[i];
        Integer total = 0;
        for (const auto& [beta, m] : weight_system(u(d), lambda)) {
          ref::Rows content;
          for (const auto& x : beta) content.push_back(x.get_si());
          EXPECT_EQ(m, ref::kostka(p, content));
          total += m;
        }
        EXPECT_EQ(total, ref::hook_content(d, p));
      }
}

TEST(Oracle, TensorProductDimensions) {
  for (const auto& g : {su(2), su(3), sp(2), so_odd(2)}) {
    for (long a = 0; a <= 1; ++a)
      for (long b = 0; b <= 2; ++b) {
        Weight l(g.rank, Integer(0)), m(g.rank, Integer(b % 2));
        l[0] = a + 1;
        m[g.rank - 1] = b;
        Integer total = 0;
        for (const auto& [nu, c] : tensor_oracle(g, l, m)) {
          EXPECT_TRUE(dominant(g, nu));
          total += c * dimension(g, nu);
        }
        EXPECT_EQ(total, dimension(g, l) * dimension(g, m)) << g.name;
      }
  }
  // Clebsch-Gordan: V_2 x V_3 = V_5 + V_3 + V_1.
  auto cg = tensor_oracle(su(2), to_integers({2}), to_integers({3}));
  EXPECT_EQ(cg, (std::map<Weight, Integer>{{to_integers({1}), 1}, {to_integers({3}), 1}, {to_integers({5}), 1}}));
  EXPECT_THROW(tensor_oracle(su(3), to_integers({20, 20}), to_integers({20, 20}), 1000), LimitError);
}
