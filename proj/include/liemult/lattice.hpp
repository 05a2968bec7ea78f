#pragma once

#include <optional>

#include "liemult/arith.hpp"

namespace liemult {

/// Column echelon form A·U = L with U unimodular.
///
/// `pivot_col[i]` is the column holding row i's pivot, or -1 when row i is a
/// rational combination of earlier rows. Pivot columns are 0, 1, ..., rank-1,
/// entries right of each pivot are zero, and pivots are positive.
struct ColumnEchelon {
  IntMatrix lower;
  IntMatrix transform;
  std::vector<long> pivot_col;
  std::size_t rank = 0;
};

ColumnEchelon column_echelon(const IntMatrix& a);

/// Integer solution set {x0 + K t : t in Z^d} of A x = b.
struct IntegerSolution {
  IntVector particular;
  IntMatrix kernel;  // n x d, columns form a lattice basis of ker(A) ∩ Z^n
};

/// Solves A x = b over the integers. Returns nullopt when no integer solution exists.
/// The kernel basis is LLL-reduced and the particular solution size-reduced against it.
std::optional<IntegerSolution> solve_integer_system(const IntMatrix& a, std::span<const Integer> b);

/// A x = b for a fixed A: the echelon form and the reduced kernel are computed
/// once and shared by all right-hand sides.
class IntegerSystem {
 public:
  explicit IntegerSystem(const IntMatrix& a);
  std::optional<IntegerSolution> solve(std::span<const Integer> b) const;
  const IntMatrix& kernel() const { return kernel_; }

 private:
  ColumnEchelon e_;
  std::size_t rows_;
  IntMatrix reduced_;  // kernel basis as rows
  IntMatrix kernel_;
  std::vector<RatVector> gs_;
  std::vector<Rational> norm2_;
};

/// LLL reduction (delta = 3/4) of the rows of `basis`, which must be linearly independent.
/// Exact integral variant; returns the reduced basis.
IntMatrix lll_reduce(IntMatrix basis);

/// Integer basis (as rows) of the left kernel {y : y^T m = 0}.
IntMatrix left_kernel(const IntMatrix& m);

}  // namespace liemult
