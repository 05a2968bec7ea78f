#include "liemult/oracle.hpp"

#include <algorithm>
#include <set>

#include "liemult/multiplicity.hpp"

namespace liemult {

namespace {

// Beta-numbers: a rim hook of length h is removed by moving one bead down by h.
using Beads = std::vector<long>;

struct CharacterTable {
  std::vector<long> cycles;
  std::map<std::pair<Beads, std::size_t>, Integer> memo;

  Integer eval(const Beads& beads, std::size_t idx) {
    if (idx == cycles.size()) return 1;
    auto key = std::make_pair(beads, idx);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const long h = cycles[idx];
    std::set<long> occupied(beads.begin(), beads.end());
    Integer total = 0;
    for (std::size_t i = 0; i < beads.size(); ++i) {
      long to = beads[i] - h;
      if (to < 0 || occupied.count(to)) continue;
      long between = 0;
      for (long x : beads)
        if (x > to && x < beads[i]) ++between;
      Beads next = beads;
      next[i] = to;
      std::sort(next.rbegin(), next.rend());
      Integer v = eval(next, idx + 1);
      total += (between % 2) ? Integer(-v) : v;
    }
    memo.emplace(std::move(key), total);
    return total;
  }
};

Beads beads_of(const YoungDiagram& y) {
  const long r = static_cast<long>(y.rows());
  Beads b(r);
  for (long i = 0; i < r; ++i) b[i] = y[i] + (r - 1 - i);
  return b;
}

}  // namespace

Integer mn_character(const YoungDiagram& shape, const YoungDiagram& cycle_type, long cap) {
  if (shape.boxes() != cycle_type.boxes())
    throw InputError("shape " + shape.str() + " and cycle type " + cycle_type.str() + " have different sizes");
  if (shape.boxes() > cap)
    throw LimitError("character oracle is capped at k = " + std::to_string(cap));
  CharacterTable t;
  t.cycles = cycle_type.parts();
  return t.eval(beads_of(shape), 0);
}

Integer class_size(const YoungDiagram& cycle_type) {
  Integer denom = 1;
  std::map<long, unsigned long> mult;
  for (long p : cycle_type.parts()) ++mult[p];
  for (auto [p, m] : mult) {
    Integer pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p), m);
    denom *= pm * factorial(m);
  }
  return factorial(static_cast<unsigned long>(cycle_type.boxes())) / denom;
}

Integer kronecker_oracle(const YoungDiagram& lambda, const YoungDiagram& mu, const YoungDiagram& nu, long cap) {
  const long k = lambda.boxes();
  if (mu.boxes() != k || nu.boxes() != k) throw InputError("diagrams have different numbers of boxes");
  if (k > cap) throw LimitError("Kronecker oracle is capped at k = " + std::to_string(cap));
  Integer total = 0;
  for (const auto& t : partitions(k))
    total += class_size(t) * mn_character(lambda, t, cap) * mn_character(mu, t, cap) * mn_character(nu, t, cap);
  Integer kf = factorial(static_cast<unsigned long>(k));
  if (total % kf != 0) throw std::logic_error("character sum not divisible by k!");
  return total / kf;
}

std::map<Weight, Integer> weight_system(const GroupDatum& g, const Weight& lambda, std::size_t cap) {
  check_weight(g, lambda, "lambda");
  if (!dominant(g, lambda)) throw InputError("lambda is not dominant");
  if (dimension(g, lambda) > cap) throw LimitError("representation too large for the oracle");
  auto add = [](const Weight& x, const Weight& y, long s) {
    Weight z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + s * y[i];
    return z;
  };
  Weight lr = add(lambda, g.rho_shift, 1);
  const Rational top = g.inner(lr, lr);
  const Rational lambda_height = g.inner(lambda, g.rho_shift);
  std::map<Weight, Integer> mult{{lambda, 1}};
  std::set<Weight> layer{lambda};
  while (!layer.empty()) {
    std::set<Weight> candidates;
    for (const auto& w : layer)
      for (const auto& a : g.simple_roots) candidates.insert(add(w, a, -1));
    std::set<Weight> next;
    for (const auto& nu : candidates) {
      if (mult.count(nu)) continue;
      Rational num = 0;
      for (const auto& a : g.positive_roots) {
        Weight x = nu;
        for (;;) {
          x = add(x, a, 1);
          if (g.inner(x, g.rho_shift) > lambda_height) break;
          auto it = mult.find(x);
          if (it != mult.end()) num += Rational(it->second) * g.inner(x, a);
        }
      }
      Weight nr = add(nu, g.rho_shift, 1);
      Rational den = top - g.inner(nr, nr);
      if (den == 0) continue;
      Rational m = 2 * num / den;
      if (!is_integer(m) || m < 0) throw std::logic_error("Freudenthal recursion gave " + m.get_str());
      if (m == 0) continue;
      mult.emplace(nu, m.get_num());
      next.insert(nu);
    }
    layer = std::move(next);
  }
  return mult;
}

std::map<Weight, Integer> tensor_oracle(const GroupDatum& g, const Weight& lambda, const Weight& mu, std::size_t cap) {
  check_weight(g, lambda, "lambda");
  check_weight(g, mu, "mu");
  if (dimension(g, lambda) * dimension(g, mu) > cap)
    throw LimitError("dim V_lambda * dim V_mu exceeds the oracle cap of " + std::to_string(cap));
  auto wl = weight_system(g, lambda, cap), wm = weight_system(g, mu, cap);
  std::map<Weight, Integer> ch;
  for (const auto& [x, mx] : wl)
    for (const auto& [y, my] : wm) {
      Weight z(x.size());
      for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] + y[i];
      ch[z] += mx * my;
    }
  std::map<Weight, Integer> out;
  const Integer limit = dimension(g, lambda) * dimension(g, mu);
  for (Integer iter = 0; !ch.empty(); ++iter) {
    if (iter > limit) throw std::logic_error("highest weight stripping did not terminate");
    auto best = ch.begin();
    Rational best_h = g.inner(best->first, g.rho_shift);
    for (auto it = std::next(ch.begin()); it != ch.end(); ++it) {
      Rational h = g.inner(it->first, g.rho_shift);
      if (h > best_h) {
        best = it;
        best_h = h;
      }
    }
    const Weight top = best->first;
    const Integer m = best->second;
    if (m < 0 || !dominant(g, top)) throw std::logic_error("product character is not a character");
    out[top] += m;
    for (const auto& [w, c] : weight_system(g, top, cap)) {
      Integer& slot = ch[w];
      slot -= m * c;
      if (slot == 0) ch.erase(w);
    }
  }
  return out;
}

}  // namespace liemult
