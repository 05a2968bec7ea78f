#pragma once

#include <functional>
#include <map>

#include "liemult/latcount.hpp"
#include "liemult/rootdata.hpp"

namespace liemult {

/// prod over positive roots of (1 - e^{-alpha}) = sum_gamma c_gamma e^{-gamma}.
struct DifferenceExpansion {
  std::map<Weight, Integer> terms;  // zero coefficients removed
};

/// F^*: weights of G (target) to weights of H (source).
struct RestrictionMap {
  GroupDatum source;  // H
  GroupDatum target;  // G
  IntMatrix matrix;   // rank(H) x rank(G)
  std::string name = "matrix";
};

RestrictionMap identity_map(const GroupDatum& g);
/// Diagonal embedding g -> g x g.
RestrictionMap diagonal_map(const GroupDatum& g);
/// Maximal torus T(rank g) -> g, in the coordinates of g.
RestrictionMap torus_map(const GroupDatum& g);
/// Arbitrary matrix; only the shape is checked.
RestrictionMap matrix_map(GroupDatum h, GroupDatum g, IntMatrix m);

enum class Strategy { automatic, kostant, gelfand_tsetlin };
Strategy parse_strategy(const std::string& name);
const char* to_string(Strategy s);

struct BranchingProblem {
  RestrictionMap map;
  Strategy strategy = Strategy::automatic;
};

struct MultiplicityOptions {
  CountOptions count;
  unsigned threads = 1;  // 0: hardware concurrency
  std::size_t weyl_cap = 10000000;
  std::size_t root_cap = 20;  // largest |R_{H,+}| accepted by difference_expansion
};

struct MultiplicityResult {
  Integer value;
  UsedBackend backend = UsedBackend::none;  // barvinok if any count used it
  std::size_t term_count = 0;               // polytope counts performed
};

/// Number of ways to write beta as a sum of positive roots.
Integer kostant_partition(const GroupDatum& g, const Weight& beta, const CountOptions& opts = {});
Integer weight_multiplicity_kostant(const GroupDatum& g, const Weight& lambda, const Weight& beta,
                                    const MultiplicityOptions& opts = {});
/// lambda and beta in U(d) epsilon coordinates; counts Gelfand-Tsetlin patterns.
Integer weight_multiplicity_gt(std::size_t d, const Weight& lambda, const Weight& beta,
                               const MultiplicityOptions& opts = {});

/// Throws LimitError when h has more than `cap` positive roots.
DifferenceExpansion difference_expansion(const GroupDatum& h, std::size_t cap = 20);

/// sum_gamma c_gamma weight_mult(mu + gamma): the multiplicity of V_mu in the
/// representation whose weight multiplicities are `weight_mult`.
Integer highest_weight_multiplicity(const GroupDatum& h, const std::function<Integer(const Weight&)>& weight_mult,
                                    const Weight& mu, std::size_t cap = 20);

struct SignedPolytope {
  int sign = 1;
  ParametricPolytope polytope;
};

/// Polytopes in the parameter y = (lambda, delta, 1) whose signed fiber counts
/// sum to the multiplicity of the H-torus weight delta in V_lambda. One
/// polytope for Gelfand-Tsetlin, one per Weyl group element for Kostant.
std::vector<SignedPolytope> build_branching_polytope(const BranchingProblem& bp, const MultiplicityOptions& opts = {});

/// The strategy `automatic` resolves to for this map.
Strategy resolve_strategy(const BranchingProblem& bp);

MultiplicityResult branching_multiplicity(const BranchingProblem& bp, const Weight& lambda, const Weight& mu,
                                          const MultiplicityOptions& opts = {});
/// A branching problem prepared once (polytopes, Gamma_H, fiber caches) and
/// evaluated at many weights. Thread-safe.
class Brancher {
 public:
  explicit Brancher(BranchingProblem bp, MultiplicityOptions opts = {});
  ~Brancher();
  Brancher(const Brancher&) = delete;
  Brancher& operator=(const Brancher&) = delete;

  MultiplicityResult operator()(const Weight& lambda, const Weight& mu) const;
  const BranchingProblem& problem() const { return bp_; }

 private:
  BranchingProblem bp_;
  MultiplicityOptions opts_;
  std::vector<SignedPolytope> polys_;
  std::vector<std::pair<Weight, Integer>> gammas_;
  std::vector<std::unique_ptr<FiberCounter>> counters_;
};

/// c^nu_{lambda mu} through the diagonal embedding.
MultiplicityResult littlewood_richardson(const GroupDatum& g, const Weight& lambda, const Weight& mu,
                                         const Weight& nu, const MultiplicityOptions& opts = {});
MultiplicityResult stretch(const BranchingProblem& bp, const Weight& lambda, const Weight& mu, long k,
                           const MultiplicityOptions& opts = {});

/// Weyl dimension formula.
Integer dimension(const GroupDatum& g, const Weight& lambda);

/// Runs jobs 0..n-1 on up to `threads` threads (0: hardware concurrency) and
/// rethrows the first exception.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& job);

}  // namespace liemult
