#pragma once

// Brute-force reference computations used as independent checks.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "liemult/arith.hpp"

namespace ref {

using liemult::Integer;
using Rows = std::vector<long>;

inline Rows trim(Rows r) {
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

inline long at(const Rows& r, std::size_t i) { return i < r.size() ? r[i] : 0; }

inline long boxes(const Rows& r) { return std::accumulate(r.begin(), r.end(), 0L); }

/// All partitions of k with at most max_rows rows.
inline std::vector<Rows> partitions(long k, std::size_t max_rows = 1000) {
  std::vector<Rows> out;
  Rows cur;
  std::function<void(long, long)> rec = [&](long left, long cap) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    if (cur.size() == max_rows) return;
    for (long p = std::min(left, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(k, k);
  return out;
}

/// dim of the U(d) irreducible with Young rows `rows` (hook-content formula).
inline Integer hook_content(std::size_t d, const Rows& rows) {
  if (rows.size() > d) return 0;
  Integer num = 1, den = 1;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (long j = 0; j < rows[i]; ++j) {
      long arm = rows[i] - j - 1, leg = 0;
      for (std::size_t r = i + 1; r < rows.size() && rows[r] > j; ++r) ++leg;
      num *= static_cast<long>(d) + j - static_cast<long>(i);
      den *= arm + leg + 1;
    }
  return num / den;
}

/// Number of semistandard tableaux of the skew shape outer/inner with content
/// `content` (entries 1..content.size()); with `lattice` only those whose
/// reverse reading word is a lattice word (Littlewood-Richardson tableaux).
inline Integer skew_tableaux(const Rows& outer, const Rows& inner, const Rows& content, bool lattice) {
  // Fill row by row, left to right.
  std::vector<std::pair<std::size_t, long>> cells;
  for (std::size_t i = 0; i < outer.size(); ++i)
    for (long j = at(inner, i); j < outer[i]; ++j) cells.emplace_back(i, j);
  if (static_cast<long>(cells.size()) != boxes(content)) return 0;
  std::map<std::pair<std::size_t, long>, long> fill;
  std::vector<long> left = content;
  Integer total = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == cells.size()) {
      if (lattice) {
        // Reading word: rows top to bottom, each right to left.
        std::vector<long> seen(content.size() + 1, 0);
        for (std::size_t i = 0; i < outer.size(); ++i)
          for (long j = outer[i] - 1; j >= at(inner, i); --j) {
            long v = fill[{i, j}];
            ++seen[v];
            if (v > 1 && seen[v] > seen[v - 1]) return;
          }
      }
      ++total;
      return;
    }
    auto [i, j] = cells[idx];
    for (long v = 1; v <= static_cast<long>(content.size()); ++v) {
      if (left[v - 1] == 0) continue;
      if (j > at(inner, i) && fill[{i, j - 1}] > v) continue;
      if (i > 0 && j >= at(inner, i - 1) && j < outer[i - 1] && fill[{i - 1, j}] >= v) continue;
      fill[{i, j}] = v;
      --left[v - 1];
      rec(idx + 1);
      ++left[v - 1];
    }
    fill.erase({i, j});
  };
  rec(0);
  return total;
}

/// Kostka number: weight multiplicity of `content` (any order) in the U(d) irreducible `rows`.
inline Integer kostka(const Rows& rows, const Rows& content) {
  for (long c : content)
    if (c < 0) return 0;
  return skew_tableaux(rows, {}, content, false);
}

/// c^nu_{lambda mu} by counting Littlewood-Richardson tableaux of shape nu/lambda.
inline Integer lr(const Rows& lambda, const Rows& mu, const Rows& nu) {
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (lambda[i] > at(nu, i)) return 0;
  return skew_tableaux(nu, lambda, mu, true);
}

/// Permutation character of the Young subgroup S_alpha at cycle type `cycles`:
/// ways to put each cycle into a row so that the row sums equal alpha.
inline Integer young_permutation_character(const Rows& alpha, const Rows& cycles) {
  Rows room = alpha;
  std::function<Integer(std::size_t)> rec = [&](std::size_t idx) -> Integer {
    if (idx == cycles.size()) return 1;
    Integer t = 0;
    for (auto& r : room)
      if (r >= cycles[idx]) {
        r -= cycles[idx];
        t += rec(idx + 1);
        r += cycles[idx];
      }
    return t;
  };
  for (long a : alpha)
    if (a < 0) return 0;
  return rec(0);
}

/// Irreducible character of S_k by the determinantal formula
/// chi^lambda = sum_w sign(w) psi^{lambda + rho - w rho}.
inline Integer character(const Rows& lambda, const Rows& cycles) {
  const std::size_t n = lambda.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Integer total = 0;
  do {
    Rows alpha(n);
    for (std::size_t i = 0; i < n; ++i)
      alpha[i] = lambda[i] + static_cast<long>(perm[i]) - static_cast<long>(i);
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
    Integer v = young_permutation_character(alpha, cycles);
    total += inv % 2 ? Integer(-v) : v;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Integer centralizer(const Rows& cycles) {
  std::map<long, long> mult;
  for (long c : cycles) ++mult[c];
  Integer z = 1;
  for (auto [c, m] : mult)
    for (long i = 1; i <= m; ++i) z *= c * i;
  return z;
}

/// g_{lambda mu nu} = sum over classes chi chi chi / z.
inline Integer kronecker(const Rows& l, const Rows& m, const Rows& n) {
  liemult::Rational total = 0;
  for (const auto& t : partitions(boxes(l)))
    total += liemult::Rational(character(l, t) * character(m, t) * character(n, t), centralizer(t));
  total.canonicalize();
  return total.get_num();
}

/// Nonnegative a x b x c integer tables with the given slice sums.
inline Integer tables(const Rows& x, const Rows& y, const Rows& z) {
  const std::size_t a = x.size(), b = y.size(), c = z.size();
  Rows rx = x, ry = y, rz = z;
  Integer total = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t cell) {
    if (cell == a * b * c) {
      if (std::all_of(rx.begin(), rx.end(), [](long v) { return v == 0; }) &&
          std::all_of(ry.begin(), ry.end(), [](long v) { return v == 0; }) &&
          std::all_of(rz.begin(), rz.end(), [](long v) { return v == 0; }))
        ++total;
      return;
    }
    std::size_t i = cell / (b * c), j = (cell / c) % b, k = cell % c;
    long cap = std::min({rx[i], ry[j], rz[k]});
    for (long v = 0; v <= cap; ++v) {
      rx[i] -= v, ry[j] -= v, rz[k] -= v;
      rec(cell + 1);
      rx[i] += v, ry[j] += v, rz[k] += v;
    }
  };
  rec(0);
  return total;
}

}  // namespace ref
