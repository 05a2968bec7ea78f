#pragma once

#include <optional>

#include "liemult/arith.hpp"

namespace liemult {

/// Exact rational simplex on the standard form {y : A y = b, y >= 0}.
///
/// Rows of A need not be independent; redundant rows are dropped during
/// phase 1. Pivoting uses Bland's rule, or the lexicographic ratio test when
/// the right-hand side carries perturbation columns.
class Simplex {
 public:
  /// `perturbation` (optional, rows x p) is appended to b as lexicographically
  /// smaller right-hand-side columns: the problem solved is A y = b + P·(eps, eps^2, ...).
  Simplex(const IntMatrix& a, std::span<const Integer> b, const IntMatrix* perturbation = nullptr);

  /// Finds a feasible basis. Returns false when the (unperturbed) system is infeasible.
  bool find_feasible();

  enum class Status { optimal, unbounded };
  /// Maximizes c·y from the current feasible basis.
  Status maximize(std::span<const Rational> c);

  /// Current basic solution (constant part of the right-hand side).
  RatVector solution() const;
  Rational objective(std::span<const Rational> c) const;

  /// Basic variable per remaining row.
  const std::vector<std::size_t>& basis() const { return basis_; }
  std::size_t num_vars() const { return nvars_; }

 private:
  void pivot(std::size_t row, std::size_t col);
  std::optional<std::size_t> ratio_test(std::size_t col) const;
  bool run(std::span<const Rational> cost, std::size_t ncols);

  std::size_t nvars_ = 0;
  std::size_t rhs_width_ = 1;
  std::size_t width_ = 0;             // columns in use (vars + artificials)
  RatMatrix tab_;                     // rows x (width_ + rhs_width_)
  std::vector<std::size_t> basis_;
  bool feasible_ = false;
};

}  // namespace liemult
