#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liemult/arith.hpp"

namespace liemult {

/// Integer coordinates in the basis declared by the owning group.
using Weight = IntVector;

/// Weakly decreasing positive parts.
class YoungDiagram {
 public:
  YoungDiagram() = default;
  /// Trailing zeros are dropped; throws InputError on negative or increasing parts.
  explicit YoungDiagram(std::vector<long> parts);
  /// "3,2,1"; "0" or "" is the empty diagram.
  static YoungDiagram parse(const std::string& text);

  const std::vector<long>& parts() const { return parts_; }
  std::size_t rows() const { return parts_.size(); }
  long boxes() const;
  long operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
  YoungDiagram conjugate() const;
  YoungDiagram scaled(long k) const;
  std::string str() const;

  friend auto operator<=>(const YoungDiagram&, const YoungDiagram&) = default;

 private:
  std::vector<long> parts_;
};

/// All partitions of k, in reverse lexicographic order ((k) first).
std::vector<YoungDiagram> partitions(long k);

enum class GroupKind { torus, su, u, so_odd, sp, so_even, product };

/// Root system and weight-lattice data of a compact connected group.
///
/// Coordinates: fundamental weights for SU(n) and B/C/D (Bourbaki numbering,
/// the last simple root short for B and long for C), the epsilon basis Z^n for
/// U(n), Z^r for tori, and concatenated blocks for products.
struct GroupDatum {
  GroupKind kind = GroupKind::torus;
  std::size_t n = 0;  // type parameter: T(n), SU(n), U(n), B(n), C(n), D(n)
  std::vector<GroupDatum> factors;  // product only
  std::string name;

  std::size_t rank = 0;
  std::vector<Weight> positive_roots;
  std::vector<Weight> simple_roots;
  /// Simple coroots as covectors: <alpha_i^vee, w> = simple_coroots[i] . w.
  std::vector<IntVector> simple_coroots;
  /// 2 rho.
  Weight weyl_vector2;
  /// Integral vector used in place of rho in lambda + rho; differs from rho by a
  /// Weyl-invariant vector (rho itself for fundamental coordinates, the
  /// staircase (n-1, ..., 0) for U(n), zero on tori).
  Weight rho_shift;
  /// Rows map coordinates into a Euclidean space with the invariant form.
  RatMatrix euclidean;

  Rational inner(std::span<const Integer> x, std::span<const Integer> y) const;
  /// Order of the Weyl group by the classical formulas.
  Integer weyl_order() const;
};

GroupDatum torus(std::size_t r);
GroupDatum su(std::size_t n);
GroupDatum u(std::size_t n);
GroupDatum so_odd(std::size_t n);   // B_n
GroupDatum sp(std::size_t n);       // C_n
GroupDatum so_even(std::size_t n);  // D_n, n >= 2
GroupDatum product(std::vector<GroupDatum> factors);

/// Parses "SU(3)", "U(2)xU(2)xU(4)", "T(2)", "B(3)", "C(2)", "D(4)".
GroupDatum build_group(const std::string& descriptor);

struct WeylElement {
  IntMatrix matrix;  // acts on weight coordinates (column vectors)
  int sign = 1;      // det
};

/// All elements of the Weyl group. Throws LimitError when the order exceeds `cap`.
std::vector<WeylElement> weyl_group(const GroupDatum& g, std::size_t cap = 10000000);

/// Reflection s_i as a matrix on weight coordinates.
IntMatrix simple_reflection(const GroupDatum& g, std::size_t i);

/// U(d) epsilon coordinates (lambda_1, ..., lambda_d).
Weight young_to_weight(std::size_t d, const YoungDiagram& y);
/// SU(d) fundamental coordinates (lambda_j - lambda_{j+1}).
Weight young_to_fundamental(std::size_t d, const YoungDiagram& y);

bool dominant(const GroupDatum& g, std::span<const Integer> w);

/// Throws InputError unless w has length g.rank.
void check_weight(const GroupDatum& g, std::span<const Integer> w, const std::string& what);

/// Parses "1,-2,3" (empty string gives the empty vector).
Weight parse_weight(const std::string& text);
std::string format_weight(std::span<const Integer> w);

/// Input coordinates. `automatic`: Young rows (or eps coordinates) for U(n),
/// fundamental coordinates for everything else.
enum class Basis { automatic, eps, fund, young };
Basis parse_basis(const std::string& name);

/// Parses a weight typed in `basis` and converts it to the coordinates of g.
/// Blocks of a product are separated by '|' or simply concatenated when the
/// block lengths are fixed. `highest` allows Young rows shorter than n.
Weight parse_group_weight(const GroupDatum& g, const std::string& text, Basis basis = Basis::automatic,
                          bool highest = true);

}  // namespace liemult
