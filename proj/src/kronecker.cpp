#include "liemult/kronecker.hpp"

#include <algorithm>
#include <numeric>

namespace liemult {

RestrictionMap kronecker_map(std::size_t a, std::size_t b, std::size_t c) {
  if (a < 1 || b < 1 || c < 1) throw InputError("Kronecker row bounds must be positive");
  return {product({u(a), u(b), u(c)}), u(a * b * c), marginal_matrix(a, b, c), "kron"};
}

IntMatrix marginal_matrix(std::size_t a, std::size_t b, std::size_t c) {
  IntMatrix m(a + b + c, a * b * c, Integer(0));
  for (std::size_t l = 0; l < a; ++l)
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t n = 0; n < c; ++n) {
        const std::size_t col = (l * b + j) * c + n;
        m(l, col) = 1;
        m(a + j, col) = 1;
        m(a + b + n, col) = 1;
      }
  return m;
}

Integer sym_weight_count(long k, const std::array<IntVector, 3>& delta, const CountOptions& opts) {
  IntVector b;
  for (const auto& block : delta) {
    if (block.empty()) throw InputError("Kronecker weight blocks must be nonempty");
    Integer sum = 0;
    for (const auto& v : block) {
      if (v < 0) return 0;
      sum += v;
    }
    if (sum != k) return 0;
    b.insert(b.end(), block.begin(), block.end());
  }
  IntMatrix m = marginal_matrix(delta[0].size(), delta[1].size(), delta[2].size());
  const std::size_t s = m.cols();
  return count(ConcretePolytope{std::move(m), std::move(b), s}, opts).value;
}

FiberCounter& KroneckerCache::counter(std::array<std::size_t, 3> shape) {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = counters_[shape];
  if (!slot) {
    IntMatrix m = marginal_matrix(shape[0], shape[1], shape[2]);
    const std::size_t s = m.cols();
    slot = std::make_unique<FiberCounter>(std::move(m), s, opts_);
  }
  return *slot;
}

namespace {

using Block = std::vector<long>;

// lambda + rho - w(rho) over w in S_n with sign det(w), keeping nonnegative
// vectors. Zero entries are dropped and the rest sorted: a zero slice sum
// forces the slice to vanish, and slices can be reordered freely.
std::map<Block, long> block_terms(const YoungDiagram& y, std::size_t n) {
  std::vector<long> rho(n), perm(n);
  for (std::size_t i = 0; i < n; ++i) rho[i] = static_cast<long>(n - 1 - i);
  std::iota(perm.begin(), perm.end(), 0L);
  std::map<Block, long> out;
  do {
    Block v;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      long x = y[i] + rho[i] - rho[perm[i]];
      if (x < 0) ok = false;
      if (x > 0) v.push_back(x);
    }
    if (!ok) continue;
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    std::sort(v.rbegin(), v.rend());
    out[v] += (inversions % 2) ? -1 : 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::size_t positive_roots(std::size_t r) { return r * (r - 1) / 2; }

struct Variant {
  YoungDiagram lambda, mu, nu;
};

// g is unchanged when two of the three diagrams are conjugated.
Variant choose_variant(const KroneckerQuery& q) {
  std::array<Variant, 4> options{{{q.lambda, q.mu, q.nu},
                                  {q.lambda.conjugate(), q.mu.conjugate(), q.nu},
                                  {q.lambda.conjugate(), q.mu, q.nu.conjugate()},
                                  {q.lambda, q.mu.conjugate(), q.nu.conjugate()}}};
  auto cost = [](const Variant& v) {
    std::size_t r1 = v.lambda.rows(), r2 = v.mu.rows(), r3 = v.nu.rows();
    return std::pair(positive_roots(r1) + positive_roots(r2) + positive_roots(r3), r1 * r2 * r3);
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < options.size(); ++i)
    if (cost(options[i]) < cost(options[best])) best = i;
  return options[best];
}

}  // namespace

MultiplicityResult kronecker_coefficient(const KroneckerQuery& q, const KroneckerOptions& opts, KroneckerCache* cache) {
  const long k = q.lambda.boxes();
  if (q.mu.boxes() != k || q.nu.boxes() != k)
    throw InputError("diagrams " + q.lambda.str() + ", " + q.mu.str() + ", " + q.nu.str() +
                     " have different numbers of boxes");
  const bool bounded = q.a || q.b || q.c;
  Variant v = bounded ? Variant{q.lambda, q.mu, q.nu} : choose_variant(q);
  std::size_t a = q.a.value_or(v.lambda.rows()), b = q.b.value_or(v.mu.rows()), c = q.c.value_or(v.nu.rows());
  if (v.lambda.rows() > a || v.mu.rows() > b || v.nu.rows() > c)
    throw InputError("a diagram has more rows than its bound");
  MultiplicityResult out;
  if (k == 0) {
    out.value = 1;
    return out;
  }
  for (std::size_t n : {a, b, c})
    if (factorial(n) > opts.term_cap)
      throw LimitError("the difference expansion for U(" + std::to_string(n) + ") has " + factorial(n).get_str() +
                       " terms, above the cap of " + std::to_string(opts.term_cap));
  auto ta = block_terms(v.lambda, a), tb = block_terms(v.mu, b), tc = block_terms(v.nu, c);
  if (Integer(ta.size()) * tb.size() * tc.size() > opts.term_cap)
    throw LimitError(std::to_string(ta.size()) + " x " + std::to_string(tb.size()) + " x " +
                     std::to_string(tc.size()) + " surviving terms, above the cap of " +
                     std::to_string(opts.term_cap));
  // Tables can be transposed, so only the multiset of the three blocks matters.
  std::map<std::array<Block, 3>, Integer> fibers;
  for (const auto& [x, cx] : ta)
    for (const auto& [y, cy] : tb)
      for (const auto& [z, cz] : tc) {
        std::array<Block, 3> key{x, y, z};
        std::sort(key.begin(), key.end(), [](const Block& p, const Block& r) {
          return p.size() != r.size() ? p.size() < r.size() : p < r;
        });
        fibers[key] += cx * cy * cz;
      }
  std::erase_if(fibers, [](const auto& kv) { return kv.second == 0; });

  std::unique_ptr<KroneckerCache> local;
  if (!cache) {
    local = std::make_unique<KroneckerCache>(opts.count);
    cache = local.get();
  }
  std::vector<std::pair<const std::array<Block, 3>*, const Integer*>> jobs;
  for (const auto& [key, coef] : fibers) jobs.emplace_back(&key, &coef);
  std::vector<Integer> values(jobs.size());
  std::vector<UsedBackend> used(jobs.size(), UsedBackend::none);
  parallel_for(jobs.size(), opts.threads, [&](std::size_t j) {
    const auto& key = *jobs[j].first;
    IntVector rhs;
    for (const auto& block : key)
      for (long x : block) rhs.emplace_back(x);
    CountResult r = cache->counter({key[0].size(), key[1].size(), key[2].size()}).count(rhs);
    values[j] = *jobs[j].second * r.value;
    used[j] = r.backend;
  });
  out.value = 0;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    out.value += values[j];
    if (used[j] == UsedBackend::barvinok || out.backend == UsedBackend::none) out.backend = used[j];
  }
  out.term_count = jobs.size();
  if (out.value < 0) throw std::logic_error("negative Kronecker coefficient " + out.value.get_str());
  return out;
}

std::vector<MultiplicityResult> kronecker_sweep(const YoungDiagram& lambda, const YoungDiagram& mu,
                                                const YoungDiagram& nu, const std::vector<long>& ks,
                                                const KroneckerOptions& opts) {
  std::vector<MultiplicityResult> out;
  KroneckerCache cache(opts.count);
  for (long k : ks) {
    if (k < 1) throw InputError("stretch factors must be positive");
    out.push_back(kronecker_coefficient({lambda.scaled(k), mu.scaled(k), nu.scaled(k), {}, {}, {}}, opts, &cache));
  }
  return out;
}

}  // namespace liemult
