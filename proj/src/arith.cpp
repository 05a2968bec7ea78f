#include "liemult/arith.hpp"

#include <sstream>
#include <utility>

namespace liemult {

std::string to_string(std::span<const Integer> v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  return os.str();
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) os << (r ? "; " : "") << to_string(m.row(r));
  os << ']';
  return os.str();
}

Integer determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int flip = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      flip = -flip;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return flip * m(n - 1, n - 1);
}

std::size_t rank(IntMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Integer a = m(r, c), b = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) * a - m(r, j) * b;
      Integer g = content(m.row(i));
      if (g > 1)
        for (auto& x : m.row(i)) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
    ++r;
  }
  return r;
}

RatMatrix inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a(n, 2 * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw std::domain_error("inverse of singular matrix");
    a.swap_rows(c, p);
    Rational inv = 1 / a(c, c);
    for (std::size_t j = c; j < 2 * n; ++j) a(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < 2 * n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, n + j);
  return out;
}

IntVector solve_transposed_unimodular(const IntMatrix& m, std::span<const Integer> rhs) {
  const std::size_t n = m.rows();
  if (m.cols() != n || rhs.size() != n) throw std::invalid_argument("solve: shape mismatch");
  // Fraction-free elimination on [m^T | rhs].
  IntMatrix a(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(j, i);
    a(i, n) = rhs[i];
  }
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) throw std::domain_error("solve: singular matrix");
      a.swap_rows(k, p);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  IntVector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Integer s = a(ii, n);
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
    if (!mpz_divisible_p(s.get_mpz_t(), a(ii, ii).get_mpz_t()))
      throw std::domain_error("solve: matrix is not unimodular");
    mpz_divexact(x[ii].get_mpz_t(), s.get_mpz_t(), a(ii, ii).get_mpz_t());
  }
  return x;
}

}  // namespace liemult

namespace liemult {
namespace {

// Fraction-free Gauss-Jordan on [m | I]. Every intermediate entry is a minor of
// the augmented matrix, so dividing by the previous pivot is exact. The left
// block ends as D*I and the right block as D*m^{-1}, with D = +-det(m).
template <class T, class Step>
bool gauss_jordan(std::size_t n, std::vector<T>& a, int& flip, Step step) {
  const std::size_t w = 2 * n;
  T prev = 1;
  flip = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p * w + k] == 0) ++p;
    if (p == n) throw std::domain_error("adjugate of singular matrix");
    if (p != k) {
      for (std::size_t c = 0; c < w; ++c) std::swap(a[p * w + c], a[k * w + c]);
      flip = -flip;
    }
    const T pivot = a[k * w + k];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const T f = a[i * w + k];
      for (std::size_t c = 0; c < w; ++c) {
        if (c == k) continue;
        if (!step(pivot, a[i * w + c], f, a[k * w + c], prev)) return false;
      }
      a[i * w + k] = 0;
    }
    prev = pivot;
  }
  return true;
}

}  // namespace

Integer adjugate(const IntMatrix& m, IntMatrix& adj) {
  if (m.rows() != m.cols()) throw std::invalid_argument("adjugate of non-square matrix");
  const std::size_t n = m.rows();
  adj = IntMatrix(n, n);
  if (n == 0) return 1;
  const std::size_t w = 2 * n;
  constexpr long kBound = 1L << 62;
  int flip = 1;

  bool small = true;
  for (const auto& v : m.data()) small = small && v.fits_slong_p() && abs(v) < kBound;
  if (small) {
    std::vector<long> a(n * w, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i * w + j] = m(i, j).get_si();
      a[i * w + n + i] = 1;
    }
    auto step = [](long pivot, long& x, long f, long y, long prev) {
      if (x == 0 && y == 0) return true;
      long p1, p2, r;
      if (!__builtin_mul_overflow(pivot, x, &p1) && !__builtin_mul_overflow(f, y, &p2) &&
          !__builtin_sub_overflow(p1, p2, &r)) {
        if (prev != 1) r /= prev;
        if (r >= kBound || r <= -kBound) return false;
        x = r;
        return true;
      }
      __int128 v = (static_cast<__int128>(pivot) * x - static_cast<__int128>(f) * y) / prev;
      if (v >= kBound || v <= -kBound) return false;
      x = static_cast<long>(v);
      return true;
    };
    if (gauss_jordan(n, a, flip, step)) {
      const long d = a[(n - 1) * w + (n - 1)];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) adj(i, j) = flip * a[i * w + n + j];
      return flip * Integer(d);
    }
  }
  std::vector<Integer> a(n * w, Integer(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * w + j] = m(i, j);
    a[i * w + n + i] = 1;
  }
  auto step = [](const Integer& pivot, Integer& x, const Integer& f, const Integer& y, const Integer& prev) {
    x = pivot * x - f * y;
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
    return true;
  };
  gauss_jordan(n, a, flip, step);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) adj(i, j) = flip * a[i * w + n + j];
  return flip * a[(n - 1) * w + (n - 1)];
}

}  // namespace liemult
