// Depth-first enumeration of {t in Z^d : N t >= c} with interval propagation.

#include <limits>

#include "liemult/latcount.hpp"
#include "liemult/lp.hpp"

namespace liemult::detail {
namespace {

using i128 = __int128;

i128 to_i128(const Integer& v) {
  // Caller guarantees |v| < 2^120.
  Integer hi = v >> 64;
  Integer lo = v - (hi << 64);
  return (static_cast<i128>(hi.get_si()) << 64) + static_cast<i128>(lo.get_ui());
}

Integer from_i128(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer hi = static_cast<unsigned long>(u >> 64);
  Integer r = (hi << 64) + static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  return neg ? Integer(-r) : r;
}

i128 fdiv(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
i128 cdiv(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}
Integer fdiv(const Integer& a, const Integer& b) { return floor_div(a, b); }
Integer cdiv(const Integer& a, const Integer& b) { return ceil_div(a, b); }

template <class T>
T convert(const Integer& v) {
  if constexpr (std::is_same_v<T, i128>)
    return to_i128(v);
  else
    return v;
}

template <class T>
Integer widen(const T& v) {
  if constexpr (std::is_same_v<T, i128>)
    return from_i128(v);
  else
    return v;
}

struct Box {
  IntVector lo, hi;
  bool empty = false;
};

// Bounding box of the real fiber in t-coordinates, from 2d linear programs.
Box lp_box(const ReducedFiber& f) {
  const std::size_t s = f.n.rows(), d = f.n.cols();
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < s && rows.size() < d; ++i) {
    rows.push_back(i);
    if (rank(f.n.select_rows(rows)) < rows.size()) rows.pop_back();
  }
  RatMatrix q = inverse(f.n.select_rows(rows));
  Simplex lp(f.equality, f.equality_rhs);
  Box box;
  if (!lp.find_feasible()) {
    box.empty = true;
    return box;
  }
  box.lo.resize(d);
  box.hi.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    RatVector obj(s, Rational(0));
    Rational shift = 0;
    for (std::size_t k = 0; k < d; ++k) {
      obj[rows[k]] = q(j, k);
      shift += q(j, k) * f.c[rows[k]];
    }
    lp.maximize(obj);
    box.hi[j] = floor(lp.objective(obj) + shift);
    for (auto& v : obj) v = -v;
    lp.maximize(obj);
    box.lo[j] = ceil(-lp.objective(obj) + shift);
  }
  return box;
}

template <class T>
class Search {
 public:
  Search(const ReducedFiber& f, const Box& box, std::uint64_t cap)
      : s_(f.n.rows()), d_(f.n.cols()), cap_(cap) {
    n_.resize(s_ * d_);
    c_.resize(s_);
    for (std::size_t i = 0; i < s_; ++i) {
      c_[i] = convert<T>(f.c[i]);
      for (std::size_t j = 0; j < d_; ++j) n_[i * d_ + j] = convert<T>(f.n(i, j));
    }
    lo_.resize(d_);
    hi_.resize(d_);
    for (std::size_t j = 0; j < d_; ++j) {
      lo_[j] = convert<T>(box.lo[j]);
      hi_[j] = convert<T>(box.hi[j]);
    }
  }

  /// Tightens the box; false when it becomes empty.
  bool propagate(std::vector<T>& lo, std::vector<T>& hi, int rounds) const {
    for (int round = 0; round < rounds; ++round) {
      bool changed = false;
      for (std::size_t i = 0; i < s_; ++i) {
        const T* row = &n_[i * d_];
        T top = 0;
        for (std::size_t j = 0; j < d_; ++j)
          if (row[j] != 0) top += row[j] > 0 ? row[j] * hi[j] : row[j] * lo[j];
        if (top < c_[i]) return false;
        for (std::size_t j = 0; j < d_; ++j) {
          if (row[j] == 0 || lo[j] == hi[j]) continue;
          T own = row[j] > 0 ? row[j] * hi[j] : row[j] * lo[j];
          T need = c_[i] - (top - own);  // row[j] * t_j >= need
          if (row[j] > 0) {
            T b = cdiv(need, row[j]);
            if (b > lo[j]) {
              lo[j] = b;
              changed = true;
            }
          } else {
            T b = fdiv(need, row[j]);
            if (b < hi[j]) {
              hi[j] = b;
              changed = true;
            }
          }
          if (lo[j] > hi[j]) return false;
        }
      }
      if (!changed) break;
    }
    return true;
  }

  Integer run() {
    total_ = 0;
    nodes_ = 0;
    if (!propagate(lo_, hi_, 64)) return 0;
    visit(lo_, hi_);
    return total_;
  }

  std::uint64_t volume() {
    if (!propagate(lo_, hi_, 64)) return 0;
    long double v = 1;
    for (std::size_t j = 0; j < d_; ++j) v *= static_cast<long double>(widen(T(hi_[j] - lo_[j] + 1)).get_d());
    const long double limit = static_cast<long double>(std::numeric_limits<std::uint64_t>::max());
    return v >= limit ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(v);
  }

 private:
  void visit(const std::vector<T>& lo, const std::vector<T>& hi) {
    if (++nodes_ > cap_)
      throw CountError(CountError::Kind::too_large,
                       "too large for enumeration (more than " + std::to_string(cap_) + " search nodes)");
    std::size_t open = d_, pick = d_;
    std::size_t nopen = 0;
    for (std::size_t j = 0; j < d_; ++j) {
      if (lo[j] == hi[j]) continue;
      ++nopen;
      open = j;
      if (pick == d_ || hi[j] - lo[j] < hi[pick] - lo[pick]) pick = j;
    }
    if (nopen <= 1) {
      // With at most one open coordinate a single round is exact.
      std::vector<T> l2 = lo, h2 = hi;
      if (!propagate(l2, h2, 2)) return;
      total_ += nopen == 0 ? Integer(1) : widen(T(h2[open] - l2[open] + 1));
      return;
    }
    std::vector<T> l2, h2;
    for (T v = lo[pick]; v <= hi[pick]; v += 1) {
      l2 = lo;
      h2 = hi;
      l2[pick] = h2[pick] = v;
      if (propagate(l2, h2, 8)) visit(l2, h2);
    }
  }

  std::size_t s_, d_;
  std::uint64_t cap_;
  std::vector<T> n_, c_, lo_, hi_;
  Integer total_;
  std::uint64_t nodes_ = 0;
};

bool fits_i128(const ReducedFiber& f, const Box& box) {
  // Every product and running sum formed by the search stays below 2^126.
  std::size_t bits = 0;
  auto upd = [&](const Integer& v) { bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2)); };
  for (const auto& v : box.lo) upd(v);
  for (const auto& v : box.hi) upd(v);
  for (const auto& v : f.c) upd(v);
  std::size_t nbits = 0;
  for (const auto& v : f.n.data()) nbits = std::max(nbits, mpz_sizeinbase(v.get_mpz_t(), 2));
  std::size_t dbits = 1;
  while ((std::size_t{1} << dbits) <= f.n.cols() + 2) ++dbits;
  return bits + nbits + dbits + 2 < 126;
}

}  // namespace

Integer enumerate_reduced(const ReducedFiber& f, std::uint64_t node_cap) {
  Box box = lp_box(f);
  if (box.empty) return 0;
  if (fits_i128(f, box)) return Search<i128>(f, box, node_cap).run();
  return Search<Integer>(f, box, node_cap).run();
}

Integer volume_bound(const ReducedFiber& f) {
  Box box = lp_box(f);
  if (box.empty) return 0;
  Integer v = 1;
  for (std::size_t j = 0; j < box.lo.size(); ++j) {
    if (box.hi[j] < box.lo[j]) return 0;
    v *= box.hi[j] - box.lo[j] + 1;
  }
  return v;
}

std::uint64_t estimate_volume(const ReducedFiber& f) {
  Box box = lp_box(f);
  if (box.empty) return 0;
  if (fits_i128(f, box)) return Search<i128>(f, box, 0).volume();
  return Search<Integer>(f, box, 0).volume();
}

}  // namespace liemult::detail
