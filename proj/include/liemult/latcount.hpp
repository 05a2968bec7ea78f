#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "liemult/arith.hpp"
#include "liemult/lattice.hpp"

namespace liemult {

/// Family {x : x_1..x_s >= 0, A x = B y} indexed by the parameter y.
struct ParametricPolytope {
  IntMatrix A;
  IntMatrix B;
  std::size_t s = 0;
};

/// Fiber {x : x_1..x_s >= 0, A x = b}; the remaining columns are free.
struct ConcretePolytope {
  IntMatrix A;
  IntVector b;
  std::size_t s = 0;
};

/// Signed cone v + cone(generators) with unimodular generator matrix (columns).
struct UnimodularCone {
  RatVector apex;
  IntMatrix generators;
  int sign = 1;
};

enum class Backend { automatic, enumeration, barvinok };

/// Which engine actually produced a count; `none` when the answer was decided
/// during reduction (empty fiber or a single point).
enum class UsedBackend { none, enumeration, barvinok };

const char* to_string(UsedBackend b);
Backend parse_backend(const std::string& name);

/// Thrown when a fiber is unbounded or exceeds a configured size cap.
class CountError : public std::runtime_error {
 public:
  enum class Kind { unbounded, too_large, dimension_cap };
  CountError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct CountOptions {
  Backend backend = Backend::automatic;
  /// auto: enumerate when the estimated number of candidate points is at most this.
  std::uint64_t enumeration_threshold = 100000;
  /// Enumeration gives up after visiting this many search nodes.
  std::uint64_t enumeration_cap = 100000000;
  /// Largest effective dimension accepted by the Barvinok backend.
  std::size_t dimension_cap = default_dimension_cap();

  /// 12, or the value of LIEMULT_DIM_CAP when set.
  static std::size_t default_dimension_cap();
};

struct CountResult {
  Integer value;
  UsedBackend backend = UsedBackend::none;
  std::size_t dimension = 0;  // effective dimension of the fiber
};

ConcretePolytope instantiate(const ParametricPolytope& p, std::span<const Integer> y);

Integer count_enumeration(const ConcretePolytope& q, const CountOptions& opts = {});
Integer count_barvinok(const ConcretePolytope& q, const CountOptions& opts = {});
CountResult count(const ConcretePolytope& q, const CountOptions& opts = {});

/// Signed unimodular decomposition of the tangent cones of a full-dimensional
/// pointed polyhedron {t : N t >= c}, for inspection and testing. Cones are in
/// t-space; apexes are the (unperturbed) vertices.
std::vector<UnimodularCone> unimodular_decomposition(const IntMatrix& n, std::span<const Integer> c);

namespace detail {
class ConeCache;
struct PreparedMatrix;
}

/// Counts fibers of one fixed constraint matrix, caching work between calls.
///
/// When A is entrywise nonnegative with no zero column and every variable is
/// sign-constrained, fibers are counted by a memoized recursion over the
/// columns whose table is shared by all right-hand sides. Other matrices fall
/// back to count(). Thread-safe.
class FiberCounter {
 public:
  FiberCounter(IntMatrix a, std::size_t s, CountOptions opts = {});
  ~FiberCounter();
  FiberCounter(const FiberCounter&) = delete;
  FiberCounter& operator=(const FiberCounter&) = delete;

  CountResult count(std::span<const Integer> b);
  const IntMatrix& matrix() const { return a_; }
  std::size_t sign_constrained() const { return s_; }

 private:
  struct Table;
  IntMatrix a_;
  std::size_t s_;
  CountOptions opts_;
  std::unique_ptr<Table> table_;  // null when the column recursion does not apply
  std::unique_ptr<detail::PreparedMatrix> prepared_;
  std::shared_ptr<detail::ConeCache> cones_;
};

namespace detail {

/// Fiber after equality elimination: integer points t of {N t >= c}, with
/// x = x0 + K t. `status` summarises what reduction already decided.
struct ReducedFiber {
  enum class Status { empty, point, full } status = Status::empty;
  IntMatrix n;  // s x d, full column rank
  IntVector c;  // length s
  IntMatrix equality;  // left kernel of n: (s - d) x s, rows y with y^T n = 0
  IntVector equality_rhs;
  std::size_t dimension() const { return n.cols(); }
};

/// The part of equality elimination that depends on A and s alone.
struct PreparedMatrix {
  PreparedMatrix(const IntMatrix& a, std::size_t s);
  IntegerSystem system;
  IntMatrix n;         // sign-constrained rows of the kernel basis
  IntMatrix equality;  // left kernel of n
};

/// Eliminates equalities, detects emptiness and unboundedness, and restricts to
/// the affine hull. Throws CountError(unbounded). `prepared` must come from q.A and q.s.
ReducedFiber reduce(const ConcretePolytope& q, const PreparedMatrix* prepared = nullptr);

/// Enumeration on a reduced fiber; throws CountError(too_large) after `node_cap` search nodes.
Integer enumerate_reduced(const ReducedFiber& f, std::uint64_t node_cap);
/// Number of candidate points in the propagated bounding box (saturates at 2^64 - 1).
std::uint64_t estimate_volume(const ReducedFiber& f);
// Lattice points in the LP bounding box; an upper bound on the count.
Integer volume_bound(const ReducedFiber& f);

/// Reusable store of decomposed cones, shared by fibers of one constraint matrix.
class ConeCache;
std::shared_ptr<ConeCache> make_cone_cache(std::size_t max_leaves = 250000);

Integer barvinok_reduced(const ReducedFiber& f, ConeCache* cache = nullptr);

/// count() with an optional cone cache.
CountResult count_reduced(const ReducedFiber& f, const CountOptions& opts, ConeCache* cache);

}  // namespace detail

}  // namespace liemult
