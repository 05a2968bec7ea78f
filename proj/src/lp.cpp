#include "liemult/lp.hpp"

namespace liemult {

Simplex::Simplex(const IntMatrix& a, std::span<const Integer> b, const IntMatrix* perturbation) {
  if (b.size() != a.rows()) throw std::invalid_argument("Simplex: rhs length mismatch");
  if (perturbation && perturbation->rows() != a.rows())
    throw std::invalid_argument("Simplex: perturbation row mismatch");
  nvars_ = a.cols();
  rhs_width_ = 1 + (perturbation ? perturbation->cols() : 0);

  // Drop all-zero rows: consistent ones carry no information, inconsistent ones make it infeasible.
  std::vector<std::size_t> keep;
  bool zero_row_infeasible = false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < a.cols() && zero; ++j) zero = a(i, j) == 0;
    if (!zero) {
      keep.push_back(i);
    } else if (b[i] != 0) {
      zero_row_infeasible = true;
    }
  }
  const std::size_t r = keep.size();
  width_ = nvars_ + r;
  tab_ = RatMatrix(r, width_ + rhs_width_, Rational(0));
  basis_.resize(r);
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t i = keep[k];
    // Row sign chosen so the right-hand side row is lexicographically nonnegative.
    int s = sign(b[i]);
    for (std::size_t p = 0; s == 0 && perturbation && p < perturbation->cols(); ++p)
      s = sign((*perturbation)(i, p));
    const int f = s < 0 ? -1 : 1;
    for (std::size_t j = 0; j < nvars_; ++j) tab_(k, j) = f * a(i, j);
    tab_(k, nvars_ + k) = 1;
    tab_(k, width_) = f * b[i];
    if (perturbation)
      for (std::size_t p = 0; p < perturbation->cols(); ++p)
        tab_(k, width_ + 1 + p) = f * (*perturbation)(i, p);
    basis_[k] = nvars_ + k;
  }
  feasible_ = !zero_row_infeasible;
}

void Simplex::pivot(std::size_t row, std::size_t col) {
  const std::size_t total = tab_.cols();
  Rational inv = 1 / tab_(row, col);
  for (std::size_t j = 0; j < total; ++j)
    if (tab_(row, j) != 0) tab_(row, j) *= inv;
  for (std::size_t i = 0; i < tab_.rows(); ++i) {
    if (i == row || tab_(i, col) == 0) continue;
    Rational f = tab_(i, col);
    for (std::size_t j = 0; j < total; ++j)
      if (tab_(row, j) != 0) tab_(i, j) -= f * tab_(row, j);
  }
  basis_[row] = col;
}

std::optional<std::size_t> Simplex::ratio_test(std::size_t col) const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < tab_.rows(); ++i) {
    if (tab_(i, col) <= 0) continue;
    if (!best) {
      best = i;
      continue;
    }
    // Compare rhs_i / t_i against rhs_b / t_b lexicographically.
    const Rational& ti = tab_(i, col);
    const Rational& tb = tab_(*best, col);
    int cmp = 0;
    for (std::size_t p = 0; p < rhs_width_ && cmp == 0; ++p) {
      Rational lhs = tab_(i, width_ + p) * tb;
      Rational rhs = tab_(*best, width_ + p) * ti;
      cmp = lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    }
    if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[*best])) best = i;
  }
  return best;
}

bool Simplex::run(std::span<const Rational> cost, std::size_t ncols) {
  std::vector<char> is_basic(width_, 0);
  for (;;) {
    std::fill(is_basic.begin(), is_basic.end(), 0);
    for (auto bv : basis_) is_basic[bv] = 1;
    std::optional<std::size_t> enter;
    for (std::size_t j = 0; j < ncols && !enter; ++j) {
      if (is_basic[j]) continue;
      Rational rc = cost[j];
      for (std::size_t i = 0; i < tab_.rows(); ++i)
        if (cost[basis_[i]] != 0 && tab_(i, j) != 0) rc -= cost[basis_[i]] * tab_(i, j);
      if (rc > 0) enter = j;
    }
    if (!enter) return true;
    auto leave = ratio_test(*enter);
    if (!leave) return false;
    pivot(*leave, *enter);
  }
}

bool Simplex::find_feasible() {
  if (!feasible_) return false;
  RatVector cost(width_, Rational(0));
  for (std::size_t j = nvars_; j < width_; ++j) cost[j] = -1;
  run(cost, width_);
  for (std::size_t i = 0; i < tab_.rows(); ++i)
    if (basis_[i] >= nvars_ && tab_(i, width_) != 0) {
      feasible_ = false;
      return false;
    }
  // Drive zero-level artificials out of the basis; rows where that fails are redundant.
  for (std::size_t i = 0; i < tab_.rows();) {
    if (basis_[i] < nvars_) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < nvars_ && !col; ++j)
      if (tab_(i, j) != 0) col = j;
    if (col) {
      pivot(i, *col);
      ++i;
      continue;
    }
    RatMatrix smaller(tab_.rows() - 1, tab_.cols());
    for (std::size_t r = 0, o = 0; r < tab_.rows(); ++r) {
      if (r == i) continue;
      for (std::size_t c = 0; c < tab_.cols(); ++c) smaller(o, c) = tab_(r, c);
      ++o;
    }
    tab_ = std::move(smaller);
    basis_.erase(basis_.begin() + static_cast<long>(i));
  }
  return true;
}

Simplex::Status Simplex::maximize(std::span<const Rational> c) {
  if (c.size() != nvars_) throw std::invalid_argument("Simplex::maximize: objective length mismatch");
  RatVector cost(width_, Rational(0));
  for (std::size_t j = 0; j < nvars_; ++j) cost[j] = c[j];
  return run(cost, nvars_) ? Status::optimal : Status::unbounded;
}

RatVector Simplex::solution() const {
  RatVector y(nvars_, Rational(0));
  for (std::size_t i = 0; i < tab_.rows(); ++i)
    if (basis_[i] < nvars_) y[basis_[i]] = tab_(i, width_);
  return y;
}

Rational Simplex::objective(std::span<const Rational> c) const {
  Rational v = 0;
  for (std::size_t i = 0; i < tab_.rows(); ++i)
    if (basis_[i] < nvars_) v += c[basis_[i]] * tab_(i, width_);
  return v;
}

}  // namespace liemult
