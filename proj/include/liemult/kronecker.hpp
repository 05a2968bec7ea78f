#pragma once

#include <array>
#include <map>
#include <optional>

#include "liemult/multiplicity.hpp"

namespace liemult {

struct KroneckerQuery {
  YoungDiagram lambda, mu, nu;
  /// Row bounds; unset means the row count of the diagram.
  std::optional<std::size_t> a, b, c;
};

/// U(a) x U(b) x U(c) -> U(abc); G-coordinate (l, m, n) sits at index (l b + m) c + n.
RestrictionMap kronecker_map(std::size_t a, std::size_t b, std::size_t c);

/// Marginal matrix of a x b x c tables: rows are the a + b + c slice sums.
IntMatrix marginal_matrix(std::size_t a, std::size_t b, std::size_t c);

/// Number of nonnegative integer a x b x c tables with the given slice sums.
Integer sym_weight_count(long k, const std::array<IntVector, 3>& delta, const CountOptions& opts = {});

/// Fiber counters shared between queries, one per table shape. Thread-safe.
class KroneckerCache {
 public:
  explicit KroneckerCache(CountOptions opts = {}) : opts_(opts) {}
  FiberCounter& counter(std::array<std::size_t, 3> shape);

 private:
  CountOptions opts_;
  std::mutex mu_;
  std::map<std::array<std::size_t, 3>, std::unique_ptr<FiberCounter>> counters_;
};

struct KroneckerOptions {
  CountOptions count;
  unsigned threads = 1;  // 0: hardware concurrency
  /// Largest n! per factor, and largest product of the surviving per-factor term counts.
  std::size_t term_cap = 10000000;
};

/// g_{lambda mu nu}. Uses a conjugate triple with fewer rows when no bounds are given.
MultiplicityResult kronecker_coefficient(const KroneckerQuery& q, const KroneckerOptions& opts = {},
                                         KroneckerCache* cache = nullptr);

/// g_{k lambda, k mu, k nu} for each k.
std::vector<MultiplicityResult> kronecker_sweep(const YoungDiagram& lambda, const YoungDiagram& mu,
                                                const YoungDiagram& nu, const std::vector<long>& ks,
                                                const KroneckerOptions& opts = {});

}  // namespace liemult
