// Barvinok counting on a reduced fiber {t in Z^d : N t >= c}.
//
// Vertices come from a lexicographically perturbed simplex on the slack form
// y = N t - c >= -eps (eps_0 >> eps_1 >> ...), which makes every vertex simple
// without changing the integer points. Each tangent cone is decomposed in the
// dual into signed unimodular cones, whose generating functions are summed
// after specializing along a moment-curve direction.

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <set>
#include <unordered_set>

#include "liemult/latcount.hpp"
#include "liemult/lattice.hpp"
#include "liemult/lp.hpp"

namespace liemult::detail {
namespace {

// Fraction-free simplex tableau T = det(B) B^{-1} [E | e] over the slack form
// E y = e, with det(B) > 0. The perturbation columns of B^{-1} [E | e | E]
// repeat the first block, so lexicographic ratios read column s, then 0..s-1.
template <class Num>
struct LexTableau {
  std::vector<Num> t;  // m x (s + 1), row-major
  Num det;
  std::vector<std::size_t> basis;
};

struct Overflow {};

inline long checked_mul(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline long checked_sub(long a, long b) {
  long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline Integer checked_mul(const Integer& a, const Integer& b) { return a * b; }
inline Integer checked_sub(const Integer& a, const Integer& b) { return a - b; }
inline long exact_div(long a, long b) { return a / b; }
inline Integer exact_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

struct BasisKey {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

template <class Num>
std::vector<std::vector<std::size_t>> lex_walk(const IntMatrix& start, const Integer& det,
                                               std::vector<std::size_t> basis) {
  const std::size_t m = start.rows(), w = start.cols(), s = w - 1;
  std::vector<std::vector<std::size_t>> out;
  auto key = [&](const std::vector<std::size_t>& b) {
    std::vector<std::uint64_t> k((s + 63) / 64, 0);
    for (auto j : b) k[j / 64] |= std::uint64_t{1} << (j % 64);
    return k;
  };
  std::unordered_set<std::vector<std::uint64_t>, BasisKey> seen;
  std::deque<LexTableau<Num>> queue;
  {
    LexTableau<Num> t0;
    t0.t.reserve(m * w);
    for (const auto& v : start.data()) {
      if constexpr (std::is_same_v<Num, long>) {
        if (!v.fits_slong_p()) throw Overflow{};
        t0.t.push_back(v.get_si());
      } else {
        t0.t.push_back(v);
      }
    }
    if constexpr (std::is_same_v<Num, long>) {
      if (!det.fits_slong_p()) throw Overflow{};
      t0.det = det.get_si();
    } else {
      t0.det = det;
    }
    t0.basis = std::move(basis);
    seen.insert(key(t0.basis));
    queue.push_back(std::move(t0));
  }
  std::vector<char> in(s);
  while (!queue.empty()) {
    LexTableau<Num> cur = std::move(queue.front());
    queue.pop_front();
    std::fill(in.begin(), in.end(), 0);
    for (auto b : cur.basis) in[b] = 1;
    std::vector<std::size_t> nb;
    for (std::size_t j = 0; j < s; ++j)
      if (!in[j]) nb.push_back(j);
    out.push_back(nb);
    const auto at = [&](std::size_t i, std::size_t c) -> const Num& { return cur.t[i * w + c]; };
    for (std::size_t j : nb) {
      std::size_t best = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (at(i, j) <= 0) continue;
        if (best == m) {
          best = i;
          continue;
        }
        int cmp = 0;
        for (std::size_t q = 0; q <= s && cmp == 0; ++q) {
          const std::size_t p = q == 0 ? s : q - 1;
          Num l = checked_mul(at(i, p), at(best, j));
          Num r = checked_mul(at(best, p), at(i, j));
          cmp = l < r ? -1 : (l > r ? 1 : 0);
        }
        if (cmp < 0) best = i;
      }
      if (best == m) throw std::logic_error("unbounded edge in a bounded fiber");
      std::vector<std::size_t> basis = cur.basis;
      basis[best] = j;
      if (!seen.insert(key(basis)).second) continue;
      LexTableau<Num> next;
      next.basis = std::move(basis);
      const Num& piv = at(best, j);
      next.det = piv;
      next.t.resize(m * w);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t c = 0; c < w; ++c) {
          if (i == best)
            next.t[i * w + c] = at(i, c);
          else
            next.t[i * w + c] = exact_div(checked_sub(checked_mul(piv, at(i, c)), checked_mul(at(i, j), at(best, c))),
                                          cur.det);
        }
      }
      queue.push_back(std::move(next));
    }
  }
  return out;
}

// Nonbasic index sets of the vertices of the lexicographically perturbed fiber.
std::vector<std::vector<std::size_t>> lex_vertices(const ReducedFiber& f) {
  const std::size_t s = f.n.rows();
  const IntMatrix& e = f.equality;
  const std::size_t m = e.rows();
  if (m == 0) {
    std::vector<std::size_t> all(s);
    for (std::size_t j = 0; j < s; ++j) all[j] = j;
    return {all};
  }
  Simplex lp(e, f.equality_rhs, &e);
  if (!lp.find_feasible()) return {};
  std::vector<std::size_t> basis = lp.basis();
  if (basis.size() != m) throw std::logic_error("lex phase 1 left a degenerate basis");
  IntMatrix adj;
  Integer det = adjugate(e.select_cols(basis), adj);
  if (det < 0) {
    det = -det;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) adj(i, j) = -adj(i, j);
  }
  IntMatrix ext(m, s + 1, Integer(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < s; ++j) ext(i, j) = e(i, j);
  for (std::size_t i = 0; i < m; ++i) ext(i, s) = f.equality_rhs[i];
  IntMatrix start = adj * ext;
  try {
    return lex_walk<long>(start, det, basis);
  } catch (const Overflow&) {
    return lex_walk<Integer>(start, det, basis);
  }
}

void make_primitive(std::span<Integer> v) {
  Integer g = content(v);
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

struct DualCone {
  IntMatrix w;  // generators as rows
  int sign;
};

// Signed decomposition of cone(rows of w) into unimodular cones, modulo
// lower-dimensional cones. `leaf(m, adj_m, det_m, sign)` receives each cone.
template <class Leaf>
void decompose(IntMatrix w, Leaf&& leaf) {
  const std::size_t d = w.rows();
  std::vector<DualCone> stack;
  stack.push_back({std::move(w), 1});
  IntMatrix adj;
  while (!stack.empty()) {
    DualCone node = std::move(stack.back());
    stack.pop_back();
    Integer det = adjugate(node.w, adj);
    Integer D = abs(det);
    if (D == 1) {
      leaf(node.w, adj, det, node.sign);
      continue;
    }
    // Rows of adj(W) = det * W^{-1} span D * {alpha : W^T alpha integral}.
    IntMatrix basis = lll_reduce(adj);
    IntVector best;
    Integer best_norm;
    std::size_t best_nnz = 0;
    for (std::size_t r = 0; r < d; ++r) {
      IntVector u(d);
      Integer norm = 0;
      std::size_t nnz = 0;
      for (std::size_t j = 0; j < d; ++j) {
        u[j] = basis(r, j) - D * floor_div(2 * basis(r, j) + D, 2 * D);
        if (u[j] != 0) ++nnz;
        if (abs(u[j]) > norm) norm = abs(u[j]);
      }
      if (nnz == 0) continue;
      if (best.empty() || norm < best_norm || (norm == best_norm && nnz < best_nnz)) {
        best = std::move(u);
        best_norm = norm;
        best_nnz = nnz;
      }
    }
    if (best.empty()) throw std::logic_error("signed decomposition found no short vector");
    // z = W^T u / D, then scaled to a primitive vector.
    IntVector z(d, Integer(0));
    for (std::size_t i = 0; i < d; ++i)
      if (best[i] != 0)
        for (std::size_t j = 0; j < d; ++j) z[j] += node.w(i, j) * best[i];
    for (auto& v : z) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), D.get_mpz_t());
    Integer g = content(z);
    if (std::none_of(best.begin(), best.end(), [](const Integer& v) { return v > 0; })) {
      for (auto& v : z) v = -v;
      for (auto& v : best) v = -v;
    }
    for (auto& v : z) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    for (std::size_t i = 0; i < d; ++i) {
      if (best[i] == 0) continue;
      IntMatrix child = node.w;
      for (std::size_t j = 0; j < d; ++j) child(i, j) = z[j];
      stack.push_back({std::move(child), node.sign * sign(best[i])});
    }
  }
}

// Constant term of a unimodular cone's generating function specialized at
// x = exp(s * ell): with b_k = <ell, g_k> and a = <ell, apex point>,
//   CT = (-1)^d / prod(b) * [s^d] exp(a s + sum_n L_n p_n s^n),
// p_n = sum_k b_k^n and L_n the coefficients of log(x / (e^x - 1)).
// Everything except a is fixed per cone, so the cone stores the polynomial
//   [s^d](...) * d! * D^d = sum_j S_j (D a)^j
// where D clears the denominators of the L_n.
struct ToddTables {
  std::size_t d = 0;
  Integer den;                       // D
  IntVector lint;                    // D * L_n
  IntVector coef;                    // n * D^{n-1} * (D L_n), n >= 2
  std::vector<IntVector> falling;    // (n-1)! / (n-k)!
  IntVector binom;                   // C(d, j)
  Integer scale;                     // d! * D^d

  explicit ToddTables(std::size_t dim) : d(dim) {
    std::vector<Rational> bern(d + 1);
    bern[0] = 1;
    for (std::size_t n = 1; n <= d; ++n) {
      Rational acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += Rational(binomial(n + 1, k)) * bern[k];
      bern[n] = -acc / Rational(static_cast<long>(n + 1));
    }
    std::vector<Rational> l(d + 1, Rational(0));
    if (d >= 1) l[1] = Rational(-1, 2);
    for (std::size_t n = 2; n <= d; n += 2)
      l[n] = -bern[n] / (Rational(static_cast<long>(n)) * Rational(factorial(n)));
    den = 1;
    for (const auto& v : l) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    lint.assign(d + 1, Integer(0));
    coef.assign(d + 1, Integer(0));
    Integer dpow = 1;  // D^{n-1}
    for (std::size_t n = 1; n <= d; ++n) {
      Rational v = l[n] * Rational(den);
      lint[n] = v.get_num();
      coef[n] = Integer(static_cast<long>(n)) * dpow * lint[n];
      dpow *= den;
    }
    falling.assign(d + 1, IntVector(d + 1, Integer(0)));
    for (std::size_t n = 1; n <= d; ++n) {
      Integer f = 1;
      for (std::size_t k = 1; k <= n; ++k) {
        falling[n][k] = f;  // (n-1)(n-2)...(n-k+1)
        f *= static_cast<long>(n - k);
      }
    }
    binom.resize(d + 1);
    for (std::size_t j = 0; j <= d; ++j) binom[j] = binomial(d, j);
    Integer dd = 1;
    for (std::size_t i = 0; i < d; ++i) dd *= den;
    scale = factorial(d) * dd;
  }
};

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr std::size_t kPrimes = 8;

// Primes just above 2^61; fibers whose count fits below their product are
// summed modulo each of them instead of over the rationals.
const std::array<u64, kPrimes>& residue_primes() {
  static const std::array<u64, kPrimes> primes = [] {
    std::array<u64, kPrimes> out{};
    Integer p = Integer(1) << 61;
    for (auto& q : out) {
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
      q = p.get_ui();
    }
    return out;
  }();
  return primes;
}

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
inline u64 addmod(u64 a, u64 b, u64 p) {
  u64 r = a + b;
  return r >= p ? r - p : r;
}
inline u64 residue(const Integer& v, u64 p) { return mpz_fdiv_ui(v.get_mpz_t(), p); }
inline u64 residue(long v, u64 p) {
  long r = v % static_cast<long>(p);
  return r < 0 ? static_cast<u64>(r + static_cast<long>(p)) : static_cast<u64>(r);
}

// One unimodular cone, prepared for a fixed specialization direction.
struct PreparedLeaf {
  std::vector<std::int32_t> m;  // d x d, rows are the dual generators
  std::vector<signed char> up;  // per row: round an integral value up under the perturbation
  IntVector b;                  // <ell, g_k>
  IntVector horner;             // S_0..S_d
  Integer scale;                // sign * denom / prod(b)
  std::vector<u64> res;         // per prime: horner, b and scale reduced
};

// Tangent cone with primitive normals W (rows): W t >= W v at a vertex v.
struct PreparedCone {
  bool failed = false;  // ell is orthogonal to some generator
  Integer hmax;         // largest generator entry of the failing cone
  std::vector<PreparedLeaf> leaves;
  Integer denom = 1;    // common denominator of the leaves
  std::size_t m_bits = 0;
  Integer det;          // det(W)
  IntMatrix adj;        // adj(W), emptied once adj64 holds it
  std::vector<long> adj64;  // empty unless every entry of adj and det fit 64 bits
  std::array<u64, kPrimes> inv_denom{};  // denom^{-1} mod each prime, 0 if not invertible
  std::size_t adj_bits = 0;
};

std::size_t bit_length(const Integer& v) { return mpz_sizeinbase(v.get_mpz_t(), 2); }

// With `exact` unset only the residues are kept, which is what the cache holds.
std::shared_ptr<const PreparedCone> prepare_cone(const IntMatrix& w, const IntVector& ell,
                                                 const ToddTables& todd, bool exact) {
  const std::size_t d = w.rows();
  auto cone = std::make_shared<PreparedCone>();
  cone->det = adjugate(w, cone->adj);
  bool small = cone->det.fits_slong_p();
  for (const auto& v : cone->adj.data()) {
    small = small && v.fits_slong_p();
    cone->adj_bits = std::max(cone->adj_bits, bit_length(v));
  }
  if (small)
    for (const auto& v : cone->adj.data()) cone->adj64.push_back(v.get_si());
  IntVector prods;  // signed prod(b) per leaf
  decompose(w, [&](const IntMatrix& m, const IntMatrix& adj, const Integer& det, int sgn) {
    if (cone->failed) return;
    PreparedLeaf leaf;
    leaf.m.resize(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (!m(i, j).fits_sint_p()) throw LimitError("cone generator entries exceed 32 bits");
        leaf.m[i * d + j] = static_cast<std::int32_t>(m(i, j).get_si());
        cone->m_bits = std::max(cone->m_bits, bit_length(m(i, j)));
      }
    // Primal generators are the columns of m^{-1} = det * adj.
    leaf.b.assign(d, Integer(0));
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t i = 0; i < d; ++i)
        if (adj(i, k) != 0) leaf.b[k] += adj(i, k) * ell[i];
      if (det < 0) leaf.b[k] = -leaf.b[k];
      if (leaf.b[k] == 0) {
        cone->failed = true;
        for (const auto& v : adj.data())
          if (abs(v) > cone->hmax) cone->hmax = abs(v);
      }
    }
    if (cone->failed) return;
    // At the perturbed vertex m_k t = lambda - sum_j (m_k W^{-1})_j eps_j / g_j with
    // g_j > 0, so the first nonzero entry of m_k adj(W) decides integral cases.
    leaf.up.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
      int dir = 0;
      for (std::size_t j = 0; j < d && dir == 0; ++j) {
        Integer coef = 0;
        for (std::size_t i = 0; i < d; ++i)
          if (leaf.m[k * d + i] != 0) coef += static_cast<long>(leaf.m[k * d + i]) * cone->adj(i, j);
        dir = -sign(coef) * sign(cone->det);
      }
      if (dir == 0) throw std::logic_error("degenerate perturbation at a vertex");
      leaf.up[k] = dir > 0;
    }
    // Power sums p_1 and p_n for even n.
    IntVector p(d + 1, Integer(0));
    for (const auto& x : leaf.b) p[1] += x;
    IntVector sq(d), pw(d);
    for (std::size_t k = 0; k < d; ++k) pw[k] = sq[k] = leaf.b[k] * leaf.b[k];
    for (std::size_t n = 2; n <= d; n += 2) {
      for (const auto& x : pw) p[n] += x;
      if (n + 2 <= d)
        for (std::size_t k = 0; k < d; ++k) pw[k] *= sq[k];
    }
    // r_n = n! D^n [s^n] exp(sum_k L_k p_k s^k).
    IntVector h(d + 1, Integer(0));
    h[1] = todd.lint[1] * p[1];
    for (std::size_t n = 2; n <= d; n += 2) h[n] = todd.coef[n] * p[n];
    IntVector r(d + 1, Integer(0));
    r[0] = 1;
    for (std::size_t n = 1; n <= d; ++n)
      for (std::size_t k = 1; k <= n; ++k)
        if (h[k] != 0) r[n] += todd.falling[n][k] * h[k] * r[n - k];
    leaf.horner.resize(d + 1);
    for (std::size_t j = 0; j <= d; ++j) leaf.horner[j] = todd.binom[j] * r[d - j];
    Integer prod = 1;
    for (const auto& x : leaf.b) prod *= x;
    if ((d % 2 == 1) != (sgn < 0)) prod = -prod;
    prods.push_back(std::move(prod));
    cone->leaves.push_back(std::move(leaf));
  });
  if (cone->failed) return cone;
  for (const auto& p : prods) mpz_lcm(cone->denom.get_mpz_t(), cone->denom.get_mpz_t(), p.get_mpz_t());
  if (!cone->adj64.empty()) cone->adj = IntMatrix();
  for (std::size_t i = 0; i < prods.size(); ++i)
    mpz_divexact(cone->leaves[i].scale.get_mpz_t(), cone->denom.get_mpz_t(), prods[i].get_mpz_t());
  if (exact) return cone;
  const auto& primes = residue_primes();
  for (std::size_t i = 0; i < kPrimes; ++i) {
    Integer inv, p(primes[i]);
    if (mpz_invert(inv.get_mpz_t(), cone->denom.get_mpz_t(), p.get_mpz_t())) cone->inv_denom[i] = inv.get_ui();
  }
  const std::size_t width = 2 * d + 2;
  for (auto& leaf : cone->leaves) {
    leaf.res.resize(kPrimes * width);
    for (std::size_t i = 0; i < kPrimes; ++i) {
      u64* r = &leaf.res[i * width];
      for (std::size_t j = 0; j <= d; ++j) r[j] = residue(leaf.horner[j], primes[i]);
      for (std::size_t k = 0; k < d; ++k) r[d + 1 + k] = residue(leaf.b[k], primes[i]);
      r[2 * d + 1] = residue(leaf.scale, primes[i]);
    }
    leaf.horner = IntVector();
    leaf.b = IntVector();
    leaf.scale = Integer();
  }
  cone->denom = Integer();
  return cone;
}

}  // namespace

// Prepared cones keyed by their dual generators and the specialization parameter.
class ConeCache {
 public:
  explicit ConeCache(std::size_t max_leaves) : max_leaves_(max_leaves) {}

  std::shared_ptr<const PreparedCone> find(const std::vector<long>& key) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : it->second;
  }
  // Last specialization parameter that worked; later fibers of the same
  // family usually accept it too, which keeps their cones cacheable.
  Integer t_hint() const {
    std::lock_guard<std::mutex> lock(mu_);
    return t_;
  }
  void set_t_hint(const Integer& t) {
    std::lock_guard<std::mutex> lock(mu_);
    t_ = t;
  }
  void insert(std::vector<long> key, std::shared_ptr<const PreparedCone> cone) {
    std::lock_guard<std::mutex> lock(mu_);
    if (leaves_ + cone->leaves.size() > max_leaves_) return;
    leaves_ += cone->leaves.size();
    map_.emplace(std::move(key), std::move(cone));
  }

 private:
  struct Hash {
    std::size_t operator()(const std::vector<long>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (long x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
      return h;
    }
  };
  mutable std::mutex mu_;
  std::unordered_map<std::vector<long>, std::shared_ptr<const PreparedCone>, Hash> map_;
  std::size_t leaves_ = 0;
  std::size_t max_leaves_;
  Integer t_ = 2;
};

std::shared_ptr<ConeCache> make_cone_cache(std::size_t max_leaves) {
  return std::make_shared<ConeCache>(max_leaves);
}

namespace {

using i128 = __int128;

void addmul(Integer& acc, const Integer& x, long k) {
  if (k >= 0)
    mpz_addmul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(k));
  else
    mpz_submul_ui(acc.get_mpz_t(), x.get_mpz_t(), -static_cast<unsigned long>(k));
}

// Vertex W^{-1} c' as vnum / det, in 64 bits when possible.
struct Vertex {
  Integer det;
  IntVector vnum;
  bool fast = false;
  long det64 = 0;
  std::vector<long> vnum64;
};

Vertex solve_vertex(const PreparedCone& cone, const IntVector& cp, const Integer& scale) {
  const std::size_t d = cp.size();
  Vertex v;
  v.det = cone.det * scale;
  std::size_t cbits = 0;
  bool small = !cone.adj64.empty() && v.det.fits_slong_p();
  for (const auto& x : cp) {
    small = small && x.fits_slong_p();
    cbits = std::max(cbits, bit_length(x));
  }
  if (small && cone.adj_bits + cbits + 6 < 127) {
    v.vnum64.resize(d);
    bool fits = true;
    for (std::size_t i = 0; i < d && fits; ++i) {
      i128 acc = 0;
      for (std::size_t k = 0; k < d; ++k) acc += static_cast<i128>(cone.adj64[i * d + k]) * cp[k].get_si();
      fits = acc > INT64_MIN && acc < INT64_MAX;
      v.vnum64[i] = static_cast<long>(acc);
    }
    if (fits) {
      v.det64 = v.det.get_si();
      std::size_t vbits = 0;
      for (long x : v.vnum64) vbits = std::max<std::size_t>(vbits, 64 - __builtin_clrsbl(x));
      v.fast = cone.m_bits + vbits + 6 < 127;
      if (v.fast) return v;
    }
  }
  v.vnum.assign(d, Integer(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      if (cone.adj64.empty())
        v.vnum[i] += cone.adj(i, k) * cp[k];
      else
        addmul(v.vnum[i], cp[k], cone.adj64[i * d + k]);
  return v;
}

// Smallest integer >= the perturbed value of m_k . vertex.
Integer perturbed_ceiling(const Vertex& v, const std::int32_t* mk, bool up, std::size_t d) {
  Integer num = 0;
  for (std::size_t j = 0; j < d; ++j)
    if (mk[j] > 0)
      mpz_addmul_ui(num.get_mpz_t(), v.vnum[j].get_mpz_t(), static_cast<unsigned long>(mk[j]));
    else if (mk[j] < 0)
      mpz_submul_ui(num.get_mpz_t(), v.vnum[j].get_mpz_t(), static_cast<unsigned long>(-static_cast<long>(mk[j])));
  if (!mpz_divisible_p(num.get_mpz_t(), v.det.get_mpz_t())) return ceil_div(num, v.det);
  Integer q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), v.det.get_mpz_t());
  return up ? Integer(q + 1) : q;
}

long perturbed_ceiling_fast(const Vertex& v, const std::int32_t* mk, bool up, std::size_t d) {
  i128 num = 0;
  for (std::size_t j = 0; j < d; ++j) num += static_cast<i128>(mk[j]) * v.vnum64[j];
  i128 q = num / v.det64, r = num % v.det64;
  if (r != 0) return static_cast<long>((r < 0) == (v.det64 < 0) ? q + 1 : q);
  return static_cast<long>(up ? q + 1 : q);
}

}  // namespace

Integer barvinok_reduced(const ReducedFiber& f, ConeCache* cache) {
  const std::size_t d = f.dimension(), s = f.n.rows();
  auto vertices = lex_vertices(f);
  if (vertices.empty()) return 0;
  ToddTables todd(d);

  // Primitive constraint normals; row i of N is g_i times row i of prim.
  IntMatrix prim = f.n;
  IntVector g(s);
  bool keyable = cache != nullptr;
  for (std::size_t i = 0; i < s; ++i) {
    g[i] = content(prim.row(i));
    make_primitive(prim.row(i));
    for (const auto& x : prim.row(i)) keyable = keyable && x.fits_slong_p();
  }

  // The count lies in [0, bound], so residues modulo primes whose product
  // exceeds the bound determine it.
  const auto& primes = residue_primes();
  std::size_t np = 0;
  {
    Integer bound = volume_bound(f), range = 1;
    do range *= Integer(primes[np++]);
    while (np < kPrimes && range <= bound);
    if (range <= bound) np = 0;
  }
  std::array<u64, kPrimes> den_mod{};
  for (std::size_t i = 0; i < np; ++i) den_mod[i] = residue(todd.den, primes[i]);
  const std::size_t w = 2 * d + 2;
  std::vector<u64> ceil_mod(d * kPrimes);

  Integer t = cache ? cache->t_hint() : Integer(2);
  for (;;) {
    IntVector ell(d);
    {
      Integer p = 1;
      for (std::size_t i = 0; i < d; ++i) {
        ell[i] = p;
        p *= t;
      }
    }
    Rational total = 0;
    std::array<u64, kPrimes> total_mod{};
    bool ok = true, exact_needed = false;
    Integer hmax = 0;
    std::vector<long> key;
    for (const auto& tight : vertices) {
      const bool keyed = keyable && np > 0 && t.fits_slong_p();
      if (keyed) {
        key.clear();
        key.push_back(t.get_si());
        for (std::size_t i : tight)
          for (const auto& x : prim.row(i)) key.push_back(x.get_si());
      }
      std::shared_ptr<const PreparedCone> cone = keyed ? cache->find(key) : nullptr;
      if (!cone) {
        cone = prepare_cone(prim.select_rows(tight), ell, todd, np == 0);
        if (keyed && !cone->failed) cache->insert(key, cone);
      }
      if (cone->failed) {
        ok = false;
        hmax = cone->hmax;
        break;
      }
      for (std::size_t i = 0; i < np; ++i) exact_needed = exact_needed || cone->inv_denom[i] == 0;
      if (exact_needed) break;
      // N_I t = c_I becomes W t = c' / G with G = lcm(g_I).
      Integer G = 1;
      for (std::size_t i : tight) mpz_lcm(G.get_mpz_t(), G.get_mpz_t(), g[i].get_mpz_t());
      IntVector cp(d);
      for (std::size_t k = 0; k < d; ++k) cp[k] = f.c[tight[k]] * (G / g[tight[k]]);
      Vertex v = solve_vertex(*cone, cp, G);

      if (np > 0) {
        std::array<u64, kPrimes> sum{};
        for (const auto& leaf : cone->leaves) {
          for (std::size_t k = 0; k < d; ++k) {
            if (v.fast) {
              long c = perturbed_ceiling_fast(v, &leaf.m[k * d], leaf.up[k], d);
              for (std::size_t i = 0; i < np; ++i) ceil_mod[k * kPrimes + i] = residue(c, primes[i]);
            } else {
              Integer c = perturbed_ceiling(v, &leaf.m[k * d], leaf.up[k], d);
              for (std::size_t i = 0; i < np; ++i) ceil_mod[k * kPrimes + i] = residue(c, primes[i]);
            }
          }
          for (std::size_t i = 0; i < np; ++i) {
            const u64 p = primes[i];
            const u64* r = &leaf.res[i * w];
            u64 a = 0;
            for (std::size_t k = 0; k < d; ++k) a = addmod(a, mulmod(r[d + 1 + k], ceil_mod[k * kPrimes + i], p), p);
            const u64 x = mulmod(den_mod[i], a, p);
            u64 h = r[d];
            for (std::size_t j = d; j-- > 0;) h = addmod(mulmod(h, x, p), r[j], p);
            sum[i] = addmod(sum[i], mulmod(h, r[2 * d + 1], p), p);
          }
        }
        for (std::size_t i = 0; i < np; ++i)
          total_mod[i] = addmod(total_mod[i], mulmod(sum[i], cone->inv_denom[i], primes[i]), primes[i]);
        continue;
      }

      Integer sum = 0, a, x, acc;
      for (const auto& leaf : cone->leaves) {
        a = 0;
        for (std::size_t k = 0; k < d; ++k) {
          if (v.fast)
            addmul(a, leaf.b[k], perturbed_ceiling_fast(v, &leaf.m[k * d], leaf.up[k], d));
          else
            a += perturbed_ceiling(v, &leaf.m[k * d], leaf.up[k], d) * leaf.b[k];
        }
        x = todd.den * a;
        acc = leaf.horner[d];
        for (std::size_t j = d; j-- > 0;) {
          acc *= x;
          acc += leaf.horner[j];
        }
        mpz_addmul(sum.get_mpz_t(), acc.get_mpz_t(), leaf.scale.get_mpz_t());
      }
      Rational term(sum, cone->denom);
      term.canonicalize();
      total += term;
    }
    if (exact_needed) {
      np = 0;
      continue;
    }
    if (!ok) {
      t = std::max<Integer>(t + 1, hmax + 2);
      continue;
    }
    if (cache) cache->set_t_hint(t);
    if (np == 0) {
      total /= Rational(todd.scale);
      if (!is_integer(total)) throw std::logic_error("Barvinok sum is not an integer: " + total.get_str());
      return total.get_num();
    }
    // Chinese remaindering of total / scale.
    Integer value = 0, modulus = 1;
    for (std::size_t i = 0; i < np; ++i) {
      Integer p(primes[i]), inv;
      if (!mpz_invert(inv.get_mpz_t(), todd.scale.get_mpz_t(), p.get_mpz_t()))
        throw std::logic_error("Barvinok scale shares a factor with a residue prime");
      u64 r = mulmod(total_mod[i], inv.get_ui(), primes[i]);
      Integer diff = (Integer(r) - value) % p;
      if (diff < 0) diff += p;
      mpz_invert(inv.get_mpz_t(), Integer(modulus % p).get_mpz_t(), p.get_mpz_t());
      value += modulus * ((diff * inv) % p);
      modulus *= p;
    }
    return value;
  }
}

}  // namespace liemult::detail

namespace liemult {

std::vector<UnimodularCone> unimodular_decomposition(const IntMatrix& n, std::span<const Integer> c) {
  if (c.size() != n.rows()) throw InputError("unimodular_decomposition: shape mismatch");
  detail::ReducedFiber f;
  f.status = detail::ReducedFiber::Status::full;
  f.n = n;
  f.c.assign(c.begin(), c.end());
  f.equality = left_kernel(n);
  IntVector negc(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) negc[i] = -c[i];
  f.equality_rhs = f.equality * negc;
  std::vector<UnimodularCone> out;
  for (const auto& tight : detail::lex_vertices(f)) {
    IntMatrix w = n.select_rows(tight);
    IntVector ct(tight.size());
    for (std::size_t i = 0; i < tight.size(); ++i) ct[i] = c[tight[i]];
    RatVector apex = inverse(w) * RatVector(ct.begin(), ct.end());
    for (std::size_t i = 0; i < w.rows(); ++i) detail::make_primitive(w.row(i));
    detail::decompose(std::move(w), [&](const IntMatrix&, const IntMatrix& adj, const Integer& det, int sgn) {
      UnimodularCone cone;
      cone.apex = apex;
      cone.generators = adj;
      if (det < 0)
        for (std::size_t i = 0; i < adj.rows(); ++i)
          for (std::size_t j = 0; j < adj.cols(); ++j) cone.generators(i, j) = -adj(i, j);
      cone.sign = sgn;
      out.push_back(std::move(cone));
    });
  }
  return out;
}

}  // namespace liemult
