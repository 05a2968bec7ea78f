#include <cstdlib>

#include "liemult/lattice.hpp"
#include "liemult/latcount.hpp"
#include "liemult/lp.hpp"

namespace liemult {

const char* to_string(UsedBackend b) {
  switch (b) {
    case UsedBackend::enumeration: return "enumeration";
    case UsedBackend::barvinok: return "barvinok";
    default: return "none";
  }
}

Backend parse_backend(const std::string& name) {
  if (name == "auto") return Backend::automatic;
  if (name == "enumeration") return Backend::enumeration;
  if (name == "barvinok") return Backend::barvinok;
  throw InputError("unknown backend '" + name + "' (expected auto, enumeration or barvinok)");
}

std::size_t CountOptions::default_dimension_cap() {
  if (const char* env = std::getenv("LIEMULT_DIM_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 12;
}

ConcretePolytope instantiate(const ParametricPolytope& p, std::span<const Integer> y) {
  if (p.A.rows() != p.B.rows()) throw InputError("parametric polytope: A and B row counts differ");
  if (y.size() != p.B.cols())
    throw InputError("parameter has length " + std::to_string(y.size()) + ", expected " +
                     std::to_string(p.B.cols()));
  IntVector yy(y.begin(), y.end());
  return {p.A, p.B * yy, p.s};
}

namespace detail {
namespace {

void validate(const ConcretePolytope& q) {
  if (q.b.size() != q.A.rows()) throw InputError("polytope: b length does not match rows of A");
  if (q.s > q.A.cols()) throw InputError("polytope: s exceeds the number of variables");
}

}  // namespace

PreparedMatrix::PreparedMatrix(const IntMatrix& a, std::size_t s) : system(a) {
  const IntMatrix& k = system.kernel();
  n = IntMatrix(s, k.cols());
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < k.cols(); ++j) n(i, j) = k(i, j);
  if (s > 0 && k.cols() > 0) equality = left_kernel(n);
}

ReducedFiber reduce(const ConcretePolytope& input, const PreparedMatrix* prepared) {
  validate(input);
  ConcretePolytope q = input;
  bool hull_known = false;
  for (;;) {
    ReducedFiber f;
    auto sol = prepared ? prepared->system.solve(q.b) : solve_integer_system(q.A, q.b);
    if (!sol) return f;
    const std::size_t s = q.s;
    const std::size_t d = sol->kernel.cols();
    if (s == 0) {
      if (d > 0) throw CountError(CountError::Kind::unbounded, "unbounded: fiber has free directions");
      f.status = ReducedFiber::Status::point;
      return f;
    }
    IntMatrix n(s, d);
    IntVector x0(s), c(s);
    for (std::size_t i = 0; i < s; ++i) {
      if (!prepared)
        for (std::size_t j = 0; j < d; ++j) n(i, j) = sol->kernel(i, j);
      x0[i] = sol->particular[i];
      c[i] = -x0[i];
    }
    if (prepared) n = prepared->n;
    if (d == 0) {
      bool ok = true;
      for (const auto& v : x0) ok = ok && v >= 0;
      f.status = ok ? ReducedFiber::Status::point : ReducedFiber::Status::empty;
      return f;
    }

    // y = n t + x0 ranges over an affine lattice in {y : eq y = eq x0}.
    IntMatrix eq = prepared ? prepared->equality : left_kernel(n);
    IntVector eq_rhs = eq * x0;
    Simplex lp(eq, eq_rhs);
    if (!lp.find_feasible()) return f;
    if (rank(n) < d) throw CountError(CountError::Kind::unbounded, "unbounded: fiber contains a line");
    RatVector ones(s, Rational(1));
    if (lp.maximize(ones) == Simplex::Status::unbounded)
      throw CountError(CountError::Kind::unbounded, "unbounded: fiber is not bounded");

    std::vector<char> positive(s, 0);
    auto mark = [&] {
      RatVector y = lp.solution();
      for (std::size_t j = 0; j < s; ++j)
        if (y[j] > 0) positive[j] = 1;
    };
    mark();
    std::vector<std::size_t> zero;
    if (!hull_known) {
      for (std::size_t j = 0; j < s; ++j) {
        if (positive[j]) continue;
        RatVector e(s, Rational(0));
        e[j] = 1;
        lp.maximize(e);
        if (lp.objective(e) == 0)
          zero.push_back(j);
        else
          mark();
      }
    }
    if (zero.empty()) {
      f.status = ReducedFiber::Status::full;
      f.n = std::move(n);
      f.c = std::move(c);
      f.equality = std::move(eq);
      f.equality_rhs = std::move(eq_rhs);
      return f;
    }
    // Sign-constrained variables that vanish on the whole fiber become equations.
    IntMatrix a2(q.A.rows() + zero.size(), q.A.cols(), Integer(0));
    IntVector b2(q.b);
    for (std::size_t i = 0; i < q.A.rows(); ++i)
      for (std::size_t j = 0; j < q.A.cols(); ++j) a2(i, j) = q.A(i, j);
    for (std::size_t k = 0; k < zero.size(); ++k) {
      a2(q.A.rows() + k, zero[k]) = 1;
      b2.push_back(0);
    }
    q.A = std::move(a2);
    q.b = std::move(b2);
    hull_known = true;
    prepared = nullptr;
  }
}

}  // namespace detail

namespace {

CountResult trivial(const detail::ReducedFiber& f) {
  CountResult r;
  r.value = f.status == detail::ReducedFiber::Status::point ? 1 : 0;
  return r;
}

}  // namespace

Integer count_enumeration(const ConcretePolytope& q, const CountOptions& opts) {
  auto f = detail::reduce(q);
  if (f.status != detail::ReducedFiber::Status::full) return trivial(f).value;
  return detail::enumerate_reduced(f, opts.enumeration_cap);
}

Integer count_barvinok(const ConcretePolytope& q, const CountOptions& opts) {
  auto f = detail::reduce(q);
  if (f.status != detail::ReducedFiber::Status::full) return trivial(f).value;
  if (f.dimension() > opts.dimension_cap)
    throw CountError(CountError::Kind::dimension_cap,
                     "effective dimension " + std::to_string(f.dimension()) +
                         " exceeds the Barvinok dimension cap " + std::to_string(opts.dimension_cap));
  return detail::barvinok_reduced(f);
}

namespace detail {

CountResult count_reduced(const ReducedFiber& f, const CountOptions& opts, ConeCache* cache) {
  if (f.status != ReducedFiber::Status::full) return trivial(f);
  CountResult r;
  r.dimension = f.dimension();
  bool use_barvinok = opts.backend == Backend::barvinok;
  if (opts.backend == Backend::automatic)
    use_barvinok = f.dimension() <= opts.dimension_cap && estimate_volume(f) > opts.enumeration_threshold;
  if (use_barvinok) {
    if (f.dimension() > opts.dimension_cap)
      throw CountError(CountError::Kind::dimension_cap,
                       "effective dimension " + std::to_string(f.dimension()) +
                           " exceeds the Barvinok dimension cap " + std::to_string(opts.dimension_cap));
    r.value = barvinok_reduced(f, cache);
    r.backend = UsedBackend::barvinok;
  } else {
    r.value = enumerate_reduced(f, opts.enumeration_cap);
    r.backend = UsedBackend::enumeration;
  }
  return r;
}

}  // namespace detail

CountResult count(const ConcretePolytope& q, const CountOptions& opts) {
  return detail::count_reduced(detail::reduce(q), opts, nullptr);
}

}  // namespace liemult
