#include "liemult/lattice.hpp"

#include <utility>

namespace liemult {
namespace {

// Replace columns (p, j) by a unimodular combination making L(row, j) zero.
void eliminate_pair(IntMatrix& l, IntMatrix& u, std::size_t row, std::size_t p, std::size_t j) {
  Integer a = l(row, p), b = l(row, j);
  Integer g, x, y;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Integer ag = a / g, bg = b / g;
  auto combine = [&](IntMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Integer cp = m(r, p), cj = m(r, j);
      m(r, p) = x * cp + y * cj;
      m(r, j) = ag * cj - bg * cp;
    }
  };
  combine(l);
  combine(u);
}

Integer round_div(const Integer& num, const Integer& den) {
  // nearest integer to num/den, den > 0
  return floor_div(2 * num + den, 2 * den);
}

}  // namespace

ColumnEchelon column_echelon(const IntMatrix& a) {
  ColumnEchelon e;
  e.lower = a;
  e.transform = IntMatrix::identity(a.cols());
  e.pivot_col.assign(a.rows(), -1);
  std::size_t p = 0;
  for (std::size_t i = 0; i < a.rows() && p < a.cols(); ++i) {
    // Bring the smallest nonzero entry to the pivot column first to limit growth.
    std::size_t best = a.cols();
    for (std::size_t j = p; j < a.cols(); ++j) {
      if (e.lower(i, j) == 0) continue;
      if (best == a.cols() || abs(e.lower(i, j)) < abs(e.lower(i, best))) best = j;
    }
    if (best == a.cols()) continue;
    e.lower.swap_cols(p, best);
    e.transform.swap_cols(p, best);
    for (std::size_t j = p + 1; j < a.cols(); ++j)
      if (e.lower(i, j) != 0) eliminate_pair(e.lower, e.transform, i, p, j);
    if (e.lower(i, p) < 0) {
      for (std::size_t r = 0; r < e.lower.rows(); ++r) e.lower(r, p) = -e.lower(r, p);
      for (std::size_t r = 0; r < e.transform.rows(); ++r) e.transform(r, p) = -e.transform(r, p);
    }
    e.pivot_col[i] = static_cast<long>(p);
    ++p;
  }
  e.rank = p;
  return e;
}

IntegerSystem::IntegerSystem(const IntMatrix& a) : e_(column_echelon(a)), rows_(a.rows()) {
  const std::size_t n = a.cols();
  const std::size_t d = n - e_.rank;
  kernel_ = IntMatrix(n, d);
  if (d == 0) return;
  reduced_ = IntMatrix(d, n);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t r = 0; r < n; ++r) reduced_(k, r) = e_.transform(r, e_.rank + k);
  reduced_ = lll_reduce(std::move(reduced_));
  kernel_ = reduced_.transpose();
  gs_.assign(d, RatVector(n));
  norm2_.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t r = 0; r < n; ++r) gs_[k][r] = reduced_(k, r);
    for (std::size_t j = 0; j < k; ++j) {
      Rational dot = 0;
      for (std::size_t r = 0; r < n; ++r) dot += Rational(reduced_(k, r)) * gs_[j][r];
      Rational mu = dot / norm2_[j];
      for (std::size_t r = 0; r < n; ++r) gs_[k][r] -= mu * gs_[j][r];
    }
    norm2_[k] = 0;
    for (std::size_t r = 0; r < n; ++r) norm2_[k] += gs_[k][r] * gs_[k][r];
  }
}

std::optional<IntegerSolution> IntegerSystem::solve(std::span<const Integer> b) const {
  if (b.size() != rows_) throw std::invalid_argument("solve_integer_system: rhs length mismatch");
  const std::size_t n = e_.transform.rows();
  IntVector z(n, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    long pc = e_.pivot_col[i];
    std::size_t upto = pc >= 0 ? static_cast<std::size_t>(pc) : e_.rank;
    Integer s = 0;
    for (std::size_t j = 0; j < upto; ++j)
      if (e_.lower(i, j) != 0) s += e_.lower(i, j) * z[j];
    Integer rest = b[i] - s;
    if (pc < 0) {
      if (rest != 0) return std::nullopt;
      continue;
    }
    const Integer& piv = e_.lower(i, static_cast<std::size_t>(pc));
    if (!mpz_divisible_p(rest.get_mpz_t(), piv.get_mpz_t())) return std::nullopt;
    mpz_divexact(z[pc].get_mpz_t(), rest.get_mpz_t(), piv.get_mpz_t());
  }
  IntegerSolution sol;
  sol.particular = e_.transform * z;
  sol.kernel = kernel_;
  // Size-reduce the particular solution against the reduced kernel (Babai rounding).
  for (std::size_t k = gs_.size(); k-- > 0;) {
    Rational dot = 0;
    for (std::size_t r = 0; r < n; ++r)
      if (sol.particular[r] != 0) dot += Rational(sol.particular[r]) * gs_[k][r];
    Integer q = floor(dot / norm2_[k] + Rational(1, 2));
    if (q == 0) continue;
    for (std::size_t r = 0; r < n; ++r) sol.particular[r] -= q * reduced_(k, r);
  }
  return sol;
}

std::optional<IntegerSolution> solve_integer_system(const IntMatrix& a, std::span<const Integer> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_integer_system: rhs length mismatch");
  return IntegerSystem(a).solve(b);
}

IntMatrix lll_reduce(IntMatrix b) {
  // Cohen, "A Course in Computational Algebraic Number Theory", Algorithm 2.6.7.
  const std::size_t n = b.rows();
  if (n <= 1) return b;
  const std::size_t m = b.cols();
  auto dot = [&](std::size_t i, std::size_t j) {
    Integer s = 0;
    for (std::size_t c = 0; c < m; ++c) s += b(i, c) * b(j, c);
    return s;
  };
  // 1-indexed storage: d[0] = 1, d[i] for i = 1..n; lambda[k][j] for j < k.
  std::vector<Integer> d(n + 1);
  std::vector<std::vector<Integer>> lam(n + 1, std::vector<Integer>(n + 1));
  d[0] = 1;
  d[1] = dot(0, 0);
  if (d[1] == 0) throw std::invalid_argument("lll_reduce: dependent vectors");
  std::size_t k = 2, kmax = 1;

  auto red = [&](std::size_t kk, std::size_t l) {
    if (2 * abs(lam[kk][l]) <= d[l]) return;
    Integer q = round_div(lam[kk][l], d[l]);
    for (std::size_t c = 0; c < m; ++c) b(kk - 1, c) -= q * b(l - 1, c);
    lam[kk][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[kk][i] -= q * lam[l][i];
  };
  auto swap_k = [&](std::size_t kk) {
    b.swap_rows(kk - 1, kk - 2);
    for (std::size_t j = 1; j + 1 < kk; ++j) std::swap(lam[kk][j], lam[kk - 1][j]);
    Integer l = lam[kk][kk - 1];
    Integer bb = (d[kk - 2] * d[kk] + l * l) / d[kk - 1];
    for (std::size_t i = kk + 1; i <= kmax; ++i) {
      Integer t = lam[i][kk];
      lam[i][kk] = (d[kk] * lam[i][kk - 1] - l * t) / d[kk - 1];
      lam[i][kk - 1] = (bb * t + l * lam[i][kk]) / d[kk];
    }
    d[kk - 1] = bb;
  };

  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        Integer u = dot(k - 1, j - 1);
        for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k)
          lam[k][j] = u;
        else {
          if (u == 0) throw std::invalid_argument("lll_reduce: dependent vectors");
          d[k] = u;
        }
      }
    }
    red(k, k - 1);
    if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lam[k][k - 1] * lam[k][k - 1]) {
      swap_k(k);
      if (k > 2) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 1;) red(k, l);
      ++k;
    }
  }
  return b;
}

IntMatrix left_kernel(const IntMatrix& m) {
  IntVector zero(m.cols(), Integer(0));
  auto sol = solve_integer_system(m.transpose(), zero);
  return sol->kernel.transpose();
}

}  // namespace liemult
