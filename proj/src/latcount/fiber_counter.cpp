#include <map>

#include "liemult/latcount.hpp"

namespace liemult {

// Memoized recursion: ways(j, r) = number of x_j..x_{n-1} >= 0 with sum_k A_k x_k = r.
struct FiberCounter::Table {
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<std::pair<std::size_t, long>>> column;  // nonzero (row, value) per column
  std::vector<std::size_t> last_use;  // last column touching each row, or SIZE_MAX
  std::vector<std::map<std::vector<long>, Integer>> memo;  // per column
  std::mutex mu;

  static constexpr long kLimit = 1L << 40;

  Integer ways(std::size_t j, std::vector<long>& r) {
    if (j == cols) {
      for (long v : r)
        if (v != 0) return 0;
      return 1;
    }
    for (std::size_t i = 0; i < rows; ++i)
      if (r[i] != 0 && (last_use[i] == SIZE_MAX || last_use[i] < j)) return 0;
    auto it = memo[j].find(r);
    if (it != memo[j].end()) return it->second;
    long ub = kLimit;
    for (auto [i, a] : column[j]) ub = std::min(ub, r[i] / a);
    Integer total = 0;
    std::vector<long> next = r;
    for (long x = 0; x <= ub; ++x) {
      total += ways(j + 1, next);
      for (auto [i, a] : column[j]) next[i] -= a;
    }
    memo[j].emplace(r, total);
    return total;
  }
};

FiberCounter::FiberCounter(IntMatrix a, std::size_t s, CountOptions opts)
    : a_(std::move(a)), s_(s), opts_(opts), cones_(detail::make_cone_cache()) {
  if (s_ > a_.cols()) throw InputError("fiber counter: s exceeds the number of variables");
  prepared_ = std::make_unique<detail::PreparedMatrix>(a_, s_);
  if (s_ != a_.cols() || opts_.backend == Backend::barvinok) return;
  auto table = std::make_unique<Table>();
  table->rows = a_.rows();
  table->cols = a_.cols();
  table->column.resize(a_.cols());
  table->last_use.assign(a_.rows(), SIZE_MAX);
  for (std::size_t j = 0; j < a_.cols(); ++j) {
    for (std::size_t i = 0; i < a_.rows(); ++i) {
      const Integer& v = a_(i, j);
      if (v < 0 || v > 1000) return;
      if (v == 0) continue;
      table->column[j].emplace_back(i, v.get_si());
      table->last_use[i] = j;
    }
    if (table->column[j].empty()) return;
  }
  table->memo.resize(a_.cols());
  table_ = std::move(table);
}

FiberCounter::~FiberCounter() = default;

CountResult FiberCounter::count(std::span<const Integer> b) {
  if (b.size() != a_.rows()) throw InputError("fiber counter: right-hand side has the wrong length");
  if (table_) {
    // The table is keyed by the residual right-hand side, so it only pays off
    // while the number of residuals stays small.
    bool small = true;
    long double states = 1;
    bool negative = false;
    for (const auto& v : b) {
      if (v < 0) negative = true;
      if (v > Table::kLimit) small = false;
      if (v >= 0) states *= v.get_d() + 1;
    }
    if (negative) return {Integer(0), UsedBackend::enumeration, 0};
    if (small && states <= 1e7) {
      std::vector<long> r(b.size());
      for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i].get_si();
      std::lock_guard<std::mutex> lock(table_->mu);
      return {table_->ways(0, r), UsedBackend::enumeration, 0};
    }
  }
  ConcretePolytope q{a_, IntVector(b.begin(), b.end()), s_};
  return detail::count_reduced(detail::reduce(q, prepared_.get()), opts_, cones_.get());
}

}  // namespace liemult
