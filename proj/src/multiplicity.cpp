#include "liemult/multiplicity.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace liemult {

RestrictionMap identity_map(const GroupDatum& g) {
  return {g, g, IntMatrix::identity(g.rank), "identity"};
}

RestrictionMap diagonal_map(const GroupDatum& g) {
  IntMatrix m(g.rank, 2 * g.rank, Integer(0));
  for (std::size_t i = 0; i < g.rank; ++i) m(i, i) = m(i, g.rank + i) = 1;
  return {g, product({g, g}), std::move(m), "diagonal"};
}

RestrictionMap torus_map(const GroupDatum& g) {
  return {torus(g.rank), g, IntMatrix::identity(g.rank), "torus"};
}

RestrictionMap matrix_map(GroupDatum h, GroupDatum g, IntMatrix m) {
  if (m.rows() != h.rank || m.cols() != g.rank)
    throw InputError("restriction matrix must be " + std::to_string(h.rank) + " x " + std::to_string(g.rank) +
                     ", got " + std::to_string(m.rows()) + " x " + std::to_string(m.cols()));
  return {std::move(h), std::move(g), std::move(m), "matrix"};
}

Strategy parse_strategy(const std::string& name) {
  if (name == "auto") return Strategy::automatic;
  if (name == "kostant") return Strategy::kostant;
  if (name == "gt" || name == "gelfand-tsetlin") return Strategy::gelfand_tsetlin;
  throw InputError("unknown strategy '" + name + "' (expected auto, kostant or gt)");
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::kostant: return "kostant";
    case Strategy::gelfand_tsetlin: return "gelfand-tsetlin";
    default: return "auto";
  }
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

IntMatrix root_matrix(const GroupDatum& g) {
  IntMatrix a(g.rank, g.positive_roots.size());
  for (std::size_t j = 0; j < g.positive_roots.size(); ++j)
    for (std::size_t i = 0; i < g.rank; ++i) a(i, j) = g.positive_roots[j][i];
  return a;
}

Weight add(const Weight& a, const Weight& b) {
  Weight c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

void require_dominant(const GroupDatum& g, const Weight& w, const std::string& what) {
  check_weight(g, w, what);
  if (!dominant(g, w)) throw InputError(what + " (" + format_weight(w) + ") is not dominant for " + g.name);
}

UsedBackend merge(UsedBackend a, UsedBackend b) {
  if (a == UsedBackend::barvinok || b == UsedBackend::barvinok) return UsedBackend::barvinok;
  if (a == UsedBackend::enumeration || b == UsedBackend::enumeration) return UsedBackend::enumeration;
  return UsedBackend::none;
}

// Affine form in the variables (split into sign-constrained slacks and free
// entries) and the parameters y.
struct Form {
  std::map<std::size_t, Integer> slack, free;
  IntVector par;
  explicit Form(std::size_t p = 0) : par(p, Integer(0)) {}
  Form& operator+=(const Form& o) {
    for (const auto& [k, v] : o.slack) slack[k] += v;
    for (const auto& [k, v] : o.free) free[k] += v;
    for (std::size_t i = 0; i < par.size(); ++i) par[i] += o.par[i];
    return *this;
  }
  Form scaled(const Integer& c) const {
    Form f = *this;
    for (auto& [k, v] : f.slack) v *= c;
    for (auto& [k, v] : f.free) v *= c;
    for (auto& v : f.par) v *= c;
    return f;
  }
};

bool gt_capable(const GroupDatum& f) {
  switch (f.kind) {
    case GroupKind::u:
    case GroupKind::su:
    case GroupKind::torus: return true;
    case GroupKind::product:
      for (const auto& x : f.factors)
        if (!gt_capable(x)) return false;
      return true;
    default: return false;
  }
}

void flatten(const GroupDatum& g, std::vector<const GroupDatum*>& out) {
  if (g.kind == GroupKind::product)
    for (const auto& f : g.factors) flatten(f, out);
  else
    out.push_back(&g);
}

// Gelfand-Tsetlin patterns for every U/SU factor of G, glued by F^* beta = delta.
ParametricPolytope gt_polytope(const RestrictionMap& map) {
  const GroupDatum& g = map.target;
  const std::size_t rg = g.rank, rh = map.source.rank, p = rg + rh + 1;
  std::size_t nslack = 0, nfree = 0;
  std::vector<Form> eqs;  // each form must vanish
  std::vector<Form> beta(rg, Form(p));

  std::vector<const GroupDatum*> factors;
  flatten(g, factors);
  std::size_t off = 0;
  for (const GroupDatum* f : factors) {
    if (f->kind == GroupKind::torus) {
      for (std::size_t i = 0; i < f->rank; ++i) beta[off + i].par[off + i] = 1;
      off += f->rank;
      continue;
    }
    const std::size_t n = f->n;
    // Top row as a form in lambda.
    std::vector<Form> up(n, Form(p));
    for (std::size_t i = 0; i < n; ++i) {
      if (f->kind == GroupKind::u)
        up[i].par[off + i] = 1;
      else
        for (std::size_t k = i; k + 1 < n; ++k) up[i].par[off + k] = 1;
    }
    std::vector<Form> rowsum(n + 1, Form(p));
    for (const auto& x : up) rowsum[n] += x;
    for (std::size_t j = n - 1; j >= 1; --j) {
      std::vector<Form> row(j, Form(p));
      for (std::size_t i = 0; i < j; ++i) {
        row[i].free[nfree++] = 1;
        // up_i - x_i = s and x_i - up_{i+1} = s'.
        Form a = up[i];
        a += row[i].scaled(-1);
        a.slack[nslack++] = -1;
        eqs.push_back(std::move(a));
        Form b = row[i];
        b += up[i + 1].scaled(-1);
        b.slack[nslack++] = -1;
        eqs.push_back(std::move(b));
        rowsum[j] += row[i];
      }
      up = std::move(row);
    }
    // beta^eps_j = |row j| - |row j-1| (row 0 is empty).
    std::vector<Form> eps(n, Form(p));
    for (std::size_t j = 1; j <= n; ++j) {
      eps[j - 1] = rowsum[j];
      eps[j - 1] += rowsum[j - 1].scaled(-1);
    }
    if (f->kind == GroupKind::u) {
      for (std::size_t i = 0; i < n; ++i) beta[off + i] = eps[i];
    } else {
      for (std::size_t i = 0; i + 1 < n; ++i) {
        beta[off + i] = eps[i];
        beta[off + i] += eps[i + 1].scaled(-1);
      }
      // SU(n) has no determinant: the pattern's total is fixed by lambda, which
      // the top row already encodes.
    }
    off += f->rank;
  }
  for (std::size_t h = 0; h < rh; ++h) {
    Form e(p);
    for (std::size_t c = 0; c < rg; ++c)
      if (map.matrix(h, c) != 0) e += beta[c].scaled(map.matrix(h, c));
    e.par[rg + h] -= 1;
    eqs.push_back(std::move(e));
  }

  ParametricPolytope out;
  out.s = nslack;
  out.A = IntMatrix(eqs.size(), nslack + nfree, Integer(0));
  out.B = IntMatrix(eqs.size(), p, Integer(0));
  for (std::size_t r = 0; r < eqs.size(); ++r) {
    for (const auto& [k, v] : eqs[r].slack) out.A(r, k) = v;
    for (const auto& [k, v] : eqs[r].free) out.A(r, nslack + k) = v;
    for (std::size_t i = 0; i < p; ++i) out.B(r, i) = -eqs[r].par[i];
  }
  return out;
}

// One polytope per Weyl element: x >= 0 over positive roots with
// F^* R x = F^*(w(lambda + rho) - rho) - delta.
std::vector<SignedPolytope> kostant_polytopes(const RestrictionMap& map, std::size_t cap) {
  const GroupDatum& g = map.target;
  const std::size_t rg = g.rank, rh = map.source.rank, p = rg + rh + 1;
  IntMatrix fr = map.matrix * root_matrix(g);
  std::vector<SignedPolytope> out;
  for (const auto& w : weyl_group(g, cap)) {
    SignedPolytope sp;
    sp.sign = w.sign;
    sp.polytope.A = fr;
    sp.polytope.s = fr.cols();
    IntMatrix fw = map.matrix * w.matrix;
    IntVector shift = w.matrix * g.rho_shift;
    for (std::size_t i = 0; i < rg; ++i) shift[i] -= g.rho_shift[i];
    IntVector fshift = map.matrix * shift;
    sp.polytope.B = IntMatrix(rh, p, Integer(0));
    for (std::size_t h = 0; h < rh; ++h) {
      for (std::size_t c = 0; c < rg; ++c) sp.polytope.B(h, c) = fw(h, c);
      sp.polytope.B(h, rg + h) = -1;
      sp.polytope.B(h, p - 1) = fshift[h];
    }
    out.push_back(std::move(sp));
  }
  return out;
}

}  // namespace

Strategy resolve_strategy(const BranchingProblem& bp) {
  const bool gt = gt_capable(bp.map.target);
  if (bp.strategy == Strategy::gelfand_tsetlin && !gt)
    throw InputError("the Gelfand-Tsetlin strategy needs G to be a product of U, SU and torus factors; " +
                     bp.map.target.name + " is not");
  if (bp.strategy != Strategy::automatic) return bp.strategy;
  return gt ? Strategy::gelfand_tsetlin : Strategy::kostant;
}

std::vector<SignedPolytope> build_branching_polytope(const BranchingProblem& bp, const MultiplicityOptions& opts) {
  if (bp.map.matrix.rows() != bp.map.source.rank || bp.map.matrix.cols() != bp.map.target.rank)
    throw InputError("restriction matrix shape does not match the groups");
  if (resolve_strategy(bp) == Strategy::gelfand_tsetlin) return {{1, gt_polytope(bp.map)}};
  return kostant_polytopes(bp.map, opts.weyl_cap);
}

namespace {

// Coordinates with respect to the simple roots, through a left inverse of the
// simple root matrix. Positive roots have nonnegative integer coordinates.
class SimpleRootCoordinates {
 public:
  explicit SimpleRootCoordinates(const GroupDatum& g) : g_(g) {
    const std::size_t r = g.simple_roots.size();
    IntMatrix gram(r, r, Integer(0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < g.rank; ++k) gram(i, j) += g.simple_roots[i][k] * g.simple_roots[j][k];
    RatMatrix ginv = inverse(gram);
    left_ = RatMatrix(r, g.rank);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < g.rank; ++k)
        for (std::size_t j = 0; j < r; ++j) left_(i, k) += ginv(i, j) * g.simple_roots[j][k];
  }

  /// Nonnegative integer coordinates of beta, or nothing when beta is not in
  /// the monoid spanned by the simple roots.
  std::optional<IntVector> operator()(const Weight& beta) const {
    IntVector c(left_.rows());
    for (std::size_t i = 0; i < left_.rows(); ++i) {
      Rational x = 0;
      for (std::size_t k = 0; k < beta.size(); ++k) x += left_(i, k) * beta[k];
      if (x < 0 || !is_integer(x)) return std::nullopt;
      c[i] = x.get_num();
    }
    for (std::size_t k = 0; k < g_.rank; ++k) {
      Integer s = 0;
      for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * g_.simple_roots[i][k];
      if (s != beta[k]) return std::nullopt;
    }
    return c;
  }

  IntMatrix root_matrix() const {
    IntMatrix m(left_.rows(), g_.positive_roots.size(), Integer(0));
    for (std::size_t j = 0; j < g_.positive_roots.size(); ++j) {
      auto c = (*this)(g_.positive_roots[j]);
      if (!c) throw std::logic_error("positive root outside the simple root monoid");
      for (std::size_t i = 0; i < c->size(); ++i) m(i, j) = (*c)[i];
    }
    return m;
  }

 private:
  const GroupDatum& g_;
  RatMatrix left_;
};

}  // namespace

Integer kostant_partition(const GroupDatum& g, const Weight& beta, const CountOptions& opts) {
  check_weight(g, beta, "beta");
  if (g.positive_roots.empty()) {
    for (const auto& v : beta)
      if (v != 0) return 0;
    return 1;
  }
  SimpleRootCoordinates coords(g);
  auto c = coords(beta);
  if (!c) return 0;
  return count(ConcretePolytope{coords.root_matrix(), *c, g.positive_roots.size()}, opts).value;
}

Integer weight_multiplicity_kostant(const GroupDatum& g, const Weight& lambda, const Weight& beta,
                                    const MultiplicityOptions& opts) {
  require_dominant(g, lambda, "lambda");
  check_weight(g, beta, "beta");
  if (g.positive_roots.empty()) return lambda == beta ? 1 : 0;
  SimpleRootCoordinates coords(g);
  FiberCounter counter(coords.root_matrix(), g.positive_roots.size(), opts.count);
  Weight shifted = add(lambda, g.rho_shift);
  Integer total = 0;
  for (const auto& w : weyl_group(g, opts.weyl_cap)) {
    Weight arg = w.matrix * shifted;
    for (std::size_t i = 0; i < g.rank; ++i) arg[i] -= g.rho_shift[i] + beta[i];
    if (auto c = coords(arg)) total += w.sign * counter.count(*c).value;
  }
  return total;
}

Integer weight_multiplicity_gt(std::size_t d, const Weight& lambda, const Weight& beta,
                               const MultiplicityOptions& opts) {
  GroupDatum g = u(d);
  require_dominant(g, lambda, "lambda");
  check_weight(g, beta, "beta");
  ParametricPolytope p = gt_polytope(torus_map(g));
  IntVector y = lambda;
  y.insert(y.end(), beta.begin(), beta.end());
  y.push_back(1);
  return count(instantiate(p, y), opts.count).value;
}

DifferenceExpansion difference_expansion(const GroupDatum& h, std::size_t cap) {
  if (h.positive_roots.size() > cap)
    throw LimitError(h.name + " has " + std::to_string(h.positive_roots.size()) +
                     " positive roots, above the cap of " + std::to_string(cap) +
                     "; the expansion has up to 2^" + std::to_string(h.positive_roots.size()) +
                     " terms, so use a smaller group");
  DifferenceExpansion e;
  e.terms[Weight(h.rank, Integer(0))] = 1;
  for (const auto& a : h.positive_roots) {
    std::map<Weight, Integer> next = e.terms;
    for (const auto& [gamma, c] : e.terms) {
      Integer& slot = next[add(gamma, a)];
      slot -= c;
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    e.terms = std::move(next);
  }
  return e;
}

Integer highest_weight_multiplicity(const GroupDatum& h, const std::function<Integer(const Weight&)>& weight_mult,
                                    const Weight& mu, std::size_t cap) {
  require_dominant(h, mu, "mu");
  Integer total = 0;
  for (const auto& [gamma, c] : difference_expansion(h, cap).terms) total += c * weight_mult(add(mu, gamma));
  return total;
}

Brancher::Brancher(BranchingProblem bp, MultiplicityOptions opts) : bp_(std::move(bp)), opts_(opts) {
  polys_ = build_branching_polytope(bp_, opts_);
  for (auto& [gamma, c] : difference_expansion(bp_.map.source, opts_.root_cap).terms) gammas_.emplace_back(gamma, c);
  for (const auto& sp : polys_)
    counters_.push_back(std::make_unique<FiberCounter>(sp.polytope.A, sp.polytope.s, opts_.count));
}

Brancher::~Brancher() = default;

MultiplicityResult Brancher::operator()(const Weight& lambda, const Weight& mu) const {
  require_dominant(bp_.map.target, lambda, "lambda");
  require_dominant(bp_.map.source, mu, "mu");
  const std::size_t jobs = gammas_.size() * polys_.size();
  std::vector<Integer> values(jobs);
  std::vector<UsedBackend> used(jobs, UsedBackend::none);
  parallel_for(jobs, opts_.threads, [&](std::size_t j) {
    const auto& [gamma, c] = gammas_[j / polys_.size()];
    const std::size_t k = j % polys_.size();
    IntVector y = lambda;
    for (std::size_t i = 0; i < mu.size(); ++i) y.push_back(mu[i] + gamma[i]);
    y.push_back(1);
    IntVector b = polys_[k].polytope.B * y;
    CountResult r = counters_[k]->count(b);
    values[j] = c * polys_[k].sign * r.value;
    used[j] = r.backend;
  });
  MultiplicityResult out;
  out.value = 0;
  for (std::size_t j = 0; j < jobs; ++j) {
    out.value += values[j];
    out.backend = merge(out.backend, used[j]);
  }
  out.term_count = jobs;
  if (out.value < 0) throw std::logic_error("negative multiplicity " + out.value.get_str());
  return out;
}

MultiplicityResult branching_multiplicity(const BranchingProblem& bp, const Weight& lambda, const Weight& mu,
                                          const MultiplicityOptions& opts) {
  require_dominant(bp.map.target, lambda, "lambda");
  require_dominant(bp.map.source, mu, "mu");
  return Brancher(bp, opts)(lambda, mu);
}

MultiplicityResult littlewood_richardson(const GroupDatum& g, const Weight& lambda, const Weight& mu,
                                         const Weight& nu, const MultiplicityOptions& opts) {
  check_weight(g, lambda, "lambda");
  check_weight(g, mu, "mu");
  Weight both = lambda;
  both.insert(both.end(), mu.begin(), mu.end());
  return branching_multiplicity({diagonal_map(g), Strategy::automatic}, both, nu, opts);
}

MultiplicityResult stretch(const BranchingProblem& bp, const Weight& lambda, const Weight& mu, long k,
                           const MultiplicityOptions& opts) {
  if (k < 1) throw InputError("stretch factor must be positive");
  Weight kl = lambda, km = mu;
  for (auto& v : kl) v *= k;
  for (auto& v : km) v *= k;
  return branching_multiplicity(bp, kl, km, opts);
}

Integer dimension(const GroupDatum& g, const Weight& lambda) {
  require_dominant(g, lambda, "lambda");
  Weight shifted = add(lambda, g.rho_shift);
  Rational d = 1;
  for (const auto& a : g.positive_roots) d *= g.inner(a, shifted) / g.inner(a, g.rho_shift);
  if (!is_integer(d)) throw std::logic_error("Weyl dimension formula gave a fraction");
  return d.get_num();
}

}  // namespace liemult
