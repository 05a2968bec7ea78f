#include "liemult/rootdata.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

namespace liemult {

YoungDiagram::YoungDiagram(std::vector<long> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw InputError("Young diagram rows must be positive: " + str());
    if (i > 0 && parts_[i] > parts_[i - 1]) throw InputError("Young diagram rows must be weakly decreasing: " + str());
  }
}

YoungDiagram YoungDiagram::parse(const std::string& text) {
  std::vector<long> parts;
  for (const auto& v : parse_weight(text)) {
    if (!v.fits_slong_p()) throw InputError("Young diagram row too large: " + v.get_str());
    parts.push_back(v.get_si());
  }
  return YoungDiagram(std::move(parts));
}

long YoungDiagram::boxes() const {
  long k = 0;
  for (long p : parts_) k += p;
  return k;
}

YoungDiagram YoungDiagram::conjugate() const {
  std::vector<long> out(parts_.empty() ? 0 : parts_[0], 0);
  for (long p : parts_)
    for (long j = 0; j < p; ++j) ++out[j];
  return YoungDiagram(std::move(out));
}

YoungDiagram YoungDiagram::scaled(long k) const {
  std::vector<long> out = parts_;
  for (auto& p : out) p *= k;
  return YoungDiagram(std::move(out));
}

std::string YoungDiagram::str() const {
  if (parts_.empty()) return "()";
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
  return s + ")";
}

std::vector<YoungDiagram> partitions(long k) {
  std::vector<YoungDiagram> out;
  std::vector<long> cur;
  auto rec = [&](auto&& self, long left, long maxpart) -> void {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (long p = std::min(left, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, left - p, p);
      cur.pop_back();
    }
  };
  rec(rec, k, k);
  return out;
}

Rational GroupDatum::inner(std::span<const Integer> x, std::span<const Integer> y) const {
  Rational acc = 0;
  for (std::size_t c = 0; c < euclidean.cols(); ++c) {
    Rational ex = 0, ey = 0;
    for (std::size_t r = 0; r < rank; ++r) {
      if (x[r] != 0) ex += euclidean(r, c) * x[r];
      if (y[r] != 0) ey += euclidean(r, c) * y[r];
    }
    acc += ex * ey;
  }
  return acc;
}

Integer GroupDatum::weyl_order() const {
  switch (kind) {
    case GroupKind::torus: return 1;
    case GroupKind::su:
    case GroupKind::u: return factorial(n);
    case GroupKind::so_odd:
    case GroupKind::sp: return factorial(n) << static_cast<unsigned>(n);
    case GroupKind::so_even: return factorial(n) << static_cast<unsigned>(n - 1);
    case GroupKind::product: {
      Integer o = 1;
      for (const auto& f : factors) o *= f.weyl_order();
      return o;
    }
  }
  return 1;
}

namespace {

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n, Integer(0));
  v[i] = 1;
  return v;
}

// Semisimple type from integral roots in an orthonormal ambient space.
GroupDatum from_ambient(GroupKind kind, std::size_t n, std::string name, std::size_t ambient,
                        const std::vector<IntVector>& roots, const std::vector<IntVector>& simple) {
  GroupDatum g;
  g.kind = kind;
  g.n = n;
  g.name = std::move(name);
  const std::size_t r = simple.size();
  g.rank = r;
  // Fundamental coordinate i of v is <alpha_i^vee, v> = 2 (alpha_i, v) / (alpha_i, alpha_i).
  auto fund = [&](const IntVector& v) {
    Weight w(r);
    for (std::size_t i = 0; i < r; ++i) w[i] = 2 * dot(simple[i], v) / dot(simple[i], simple[i]);
    return w;
  };
  for (const auto& a : roots) g.positive_roots.push_back(fund(a));
  for (const auto& a : simple) g.simple_roots.push_back(fund(a));
  for (std::size_t i = 0; i < r; ++i) g.simple_coroots.push_back(unit(r, i));
  g.weyl_vector2.assign(r, Integer(2));
  g.rho_shift.assign(r, Integer(1));
  // omega_i = sum_j z_ij alpha_j with (alpha_k^vee, omega_i) = delta_ki, i.e. z = cartan^{-T}.
  IntMatrix cartan(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) cartan(i, j) = g.simple_roots[j][i];
  RatMatrix z = inverse(cartan.transpose());
  g.euclidean = RatMatrix(r, ambient, Rational(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t c = 0; c < ambient; ++c) g.euclidean(i, c) += z(i, j) * simple[j][c];
  return g;
}

IntVector eps_combo(std::size_t m, std::initializer_list<std::pair<std::size_t, long>> terms) {
  IntVector v(m, Integer(0));
  for (auto [i, c] : terms) v[i] += c;
  return v;
}

std::vector<IntVector> type_a_roots(std::size_t m) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) out.push_back(eps_combo(m, {{i, 1}, {j, -1}}));
  return out;
}

std::vector<IntVector> chain_simple(std::size_t m) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i + 1 < m; ++i) out.push_back(eps_combo(m, {{i, 1}, {i + 1, -1}}));
  return out;
}

std::vector<IntVector> plus_roots(std::size_t m) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) out.push_back(eps_combo(m, {{i, 1}, {j, 1}}));
  return out;
}

}  // namespace

GroupDatum torus(std::size_t r) {
  GroupDatum g;
  g.kind = GroupKind::torus;
  g.n = r;
  g.name = "T(" + std::to_string(r) + ")";
  g.rank = r;
  g.weyl_vector2.assign(r, Integer(0));
  g.rho_shift.assign(r, Integer(0));
  g.euclidean = RatMatrix::identity(r);
  return g;
}

GroupDatum su(std::size_t n) {
  if (n < 1) throw InputError("SU(n) needs n >= 1");
  return from_ambient(GroupKind::su, n, "SU(" + std::to_string(n) + ")", n, type_a_roots(n), chain_simple(n));
}

GroupDatum u(std::size_t n) {
  if (n < 1) throw InputError("U(n) needs n >= 1");
  GroupDatum g;
  g.kind = GroupKind::u;
  g.n = n;
  g.name = "U(" + std::to_string(n) + ")";
  g.rank = n;
  g.positive_roots = type_a_roots(n);
  g.simple_roots = chain_simple(n);
  g.simple_coroots = g.simple_roots;
  for (std::size_t i = 0; i < n; ++i) {
    g.weyl_vector2.push_back(Integer(static_cast<long>(n) - 1 - 2 * static_cast<long>(i)));
    g.rho_shift.push_back(Integer(static_cast<long>(n - 1 - i)));
  }
  g.euclidean = RatMatrix::identity(n);
  return g;
}

GroupDatum so_odd(std::size_t n) {
  if (n < 1) throw InputError("B(n) needs n >= 1");
  auto roots = type_a_roots(n);
  for (auto& v : plus_roots(n)) roots.push_back(v);
  for (std::size_t i = 0; i < n; ++i) roots.push_back(unit(n, i));
  auto simple = chain_simple(n);
  simple.push_back(unit(n, n - 1));
  return from_ambient(GroupKind::so_odd, n, "B(" + std::to_string(n) + ")", n, roots, simple);
}

GroupDatum sp(std::size_t n) {
  if (n < 1) throw InputError("C(n) needs n >= 1");
  auto roots = type_a_roots(n);
  for (auto& v : plus_roots(n)) roots.push_back(v);
  for (std::size_t i = 0; i < n; ++i) roots.push_back(eps_combo(n, {{i, 2}}));
  auto simple = chain_simple(n);
  simple.push_back(eps_combo(n, {{n - 1, 2}}));
  return from_ambient(GroupKind::sp, n, "C(" + std::to_string(n) + ")", n, roots, simple);
}

GroupDatum so_even(std::size_t n) {
  if (n < 2) throw InputError("D(n) needs n >= 2");
  auto roots = type_a_roots(n);
  for (auto& v : plus_roots(n)) roots.push_back(v);
  auto simple = chain_simple(n);
  simple.push_back(eps_combo(n, {{n - 2, 1}, {n - 1, 1}}));
  return from_ambient(GroupKind::so_even, n, "D(" + std::to_string(n) + ")", n, roots, simple);
}

GroupDatum product(std::vector<GroupDatum> factors) {
  if (factors.size() == 1) return std::move(factors[0]);
  GroupDatum g;
  g.kind = GroupKind::product;
  std::size_t r = 0, amb = 0;
  for (const auto& f : factors) {
    r += f.rank;
    amb += f.euclidean.cols();
    g.name += (g.name.empty() ? "" : "x") + f.name;
  }
  g.rank = r;
  g.euclidean = RatMatrix(r, amb, Rational(0));
  auto embed = [&](const IntVector& v, std::size_t off) {
    IntVector out(r, Integer(0));
    for (std::size_t i = 0; i < v.size(); ++i) out[off + i] = v[i];
    return out;
  };
  std::size_t off = 0, aoff = 0;
  for (const auto& f : factors) {
    for (const auto& a : f.positive_roots) g.positive_roots.push_back(embed(a, off));
    for (const auto& a : f.simple_roots) g.simple_roots.push_back(embed(a, off));
    for (const auto& a : f.simple_coroots) g.simple_coroots.push_back(embed(a, off));
    for (std::size_t i = 0; i < f.rank; ++i) {
      g.weyl_vector2.push_back(f.weyl_vector2[i]);
      g.rho_shift.push_back(f.rho_shift[i]);
      for (std::size_t c = 0; c < f.euclidean.cols(); ++c) g.euclidean(off + i, aoff + c) = f.euclidean(i, c);
    }
    off += f.rank;
    aoff += f.euclidean.cols();
  }
  g.factors = std::move(factors);
  return g;
}

GroupDatum build_group(const std::string& descriptor) {
  static const std::regex factor_re(R"(\s*(SU|U|T|B|C|D|SO|Sp)\s*\(\s*(\d+)\s*\)\s*)");
  std::vector<GroupDatum> factors;
  std::size_t start = 0;
  while (start <= descriptor.size()) {
    std::size_t x = descriptor.find('x', start);
    std::string part = descriptor.substr(start, x == std::string::npos ? std::string::npos : x - start);
    std::smatch m;
    if (!std::regex_match(part, m, factor_re))
      throw InputError("cannot parse group '" + part + "' (expected e.g. SU(3), U(2)xU(2), T(1), B(3), C(2), D(4))");
    const std::string t = m[1];
    const unsigned long k = std::stoul(m[2]);
    if (k > 64) throw InputError("group rank too large in '" + part + "'");
    if (t == "SU") factors.push_back(su(k));
    else if (t == "U") factors.push_back(u(k));
    else if (t == "T") factors.push_back(torus(k));
    else if (t == "B") factors.push_back(so_odd(k));
    else if (t == "C") factors.push_back(sp(k));
    else if (t == "D") factors.push_back(so_even(k));
    else throw InputError("use B(n), C(n) or D(n) for orthogonal and symplectic groups, not '" + part + "'");
    if (x == std::string::npos) break;
    start = x + 1;
  }
  if (factors.empty()) throw InputError("empty group descriptor");
  return product(std::move(factors));
}

IntMatrix simple_reflection(const GroupDatum& g, std::size_t i) {
  IntMatrix m = IntMatrix::identity(g.rank);
  const auto& a = g.simple_roots[i];
  const auto& c = g.simple_coroots[i];
  for (std::size_t r = 0; r < g.rank; ++r)
    for (std::size_t s = 0; s < g.rank; ++s) m(r, s) -= a[r] * c[s];
  return m;
}

std::vector<WeylElement> weyl_group(const GroupDatum& g, std::size_t cap) {
  Integer order = g.weyl_order();
  if (order > cap)
    throw LimitError("Weyl group of " + g.name + " has " + order.get_str() + " elements, above the cap of " +
                     std::to_string(cap));
  std::vector<IntMatrix> gens;
  for (std::size_t i = 0; i < g.simple_roots.size(); ++i) gens.push_back(simple_reflection(g, i));
  std::vector<WeylElement> out{{IntMatrix::identity(g.rank), 1}};
  std::set<std::vector<Integer>> seen{out[0].matrix.data()};
  // Breadth-first by length, so the sign is (-1)^length.
  for (std::size_t head = 0; head < out.size(); ++head)
    for (const auto& s : gens) {
      IntMatrix m = s * out[head].matrix;
      if (seen.insert(m.data()).second) out.push_back({std::move(m), -out[head].sign});
    }
  return out;
}

Weight young_to_weight(std::size_t d, const YoungDiagram& y) {
  if (y.rows() > d)
    throw InputError("diagram " + y.str() + " has more than " + std::to_string(d) + " rows");
  Weight w(d);
  for (std::size_t i = 0; i < d; ++i) w[i] = y[i];
  return w;
}

Weight young_to_fundamental(std::size_t d, const YoungDiagram& y) {
  Weight e = young_to_weight(d, y);
  Weight w(d - 1);
  for (std::size_t i = 0; i + 1 < d; ++i) w[i] = e[i] - e[i + 1];
  return w;
}

void check_weight(const GroupDatum& g, std::span<const Integer> w, const std::string& what) {
  if (w.size() != g.rank)
    throw InputError(what + " has " + std::to_string(w.size()) + " coordinates but " + g.name + " has rank " +
                     std::to_string(g.rank));
}

bool dominant(const GroupDatum& g, std::span<const Integer> w) {
  if (w.size() != g.rank) return false;
  for (const auto& c : g.simple_coroots)
    if (dot(c, w) < 0) return false;
  return true;
}

Weight parse_weight(const std::string& text) {
  Weight out;
  std::string t = text;
  std::erase_if(t, [](char c) { return c == ' ' || c == '(' || c == ')' || c == '[' || c == ']'; });
  if (t.empty()) return out;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      if (item.empty()) throw std::invalid_argument("empty");
      out.emplace_back(item, 10);
    } catch (const std::invalid_argument&) {
      throw InputError("cannot parse integer '" + item + "' in '" + text + "'");
    }
  }
  return out;
}

std::string format_weight(std::span<const Integer> w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + w[i].get_str();
  return s;
}

}  // namespace liemult

namespace liemult {

Basis parse_basis(const std::string& name) {
  if (name == "auto") return Basis::automatic;
  if (name == "eps") return Basis::eps;
  if (name == "fund") return Basis::fund;
  if (name == "young") return Basis::young;
  throw InputError("unknown basis '" + name + "' (expected eps, fund or young)");
}

namespace {

std::optional<std::size_t> chunk_length(const GroupDatum& f, Basis basis) {
  switch (f.kind) {
    case GroupKind::u:
      return basis == Basis::fund ? std::nullopt : std::optional(f.n);
    case GroupKind::su:
      return basis == Basis::automatic || basis == Basis::fund ? f.n - 1 : f.n;
    default:
      return f.rank;
  }
}

Weight factor_weight(const GroupDatum& f, const Weight& v, Basis basis, bool highest) {
  const std::string where = " for " + f.name;
  switch (f.kind) {
    case GroupKind::u:
      if (basis == Basis::fund) throw InputError("U(n) weights take eps or young coordinates" + where);
      if (v.size() == f.n && (basis != Basis::young || !highest)) return v;
      if (!highest) throw InputError("expected " + std::to_string(f.n) + " eps coordinates" + where);
      [[fallthrough]];
    case GroupKind::su:
      if (f.kind == GroupKind::su && (basis == Basis::automatic || basis == Basis::fund)) break;
      if (f.kind == GroupKind::su && basis == Basis::eps) {
        if (v.size() != f.n) throw InputError("expected " + std::to_string(f.n) + " eps coordinates" + where);
        Weight w(f.n - 1);
        for (std::size_t i = 0; i + 1 < f.n; ++i) w[i] = v[i] - v[i + 1];
        return w;
      }
      {
        std::vector<long> rows;
        for (const auto& x : v) {
          if (!x.fits_slong_p()) throw InputError("row length out of range" + where);
          rows.push_back(x.get_si());
        }
        YoungDiagram y(rows);
        return f.kind == GroupKind::u ? young_to_weight(f.n, y) : young_to_fundamental(f.n, y);
      }
    case GroupKind::torus:
      break;
    default:
      if (basis == Basis::eps || basis == Basis::young)
        throw InputError("only fundamental coordinates are accepted" + where);
  }
  check_weight(f, v, "weight");
  return v;
}

}  // namespace

Weight parse_group_weight(const GroupDatum& g, const std::string& text, Basis basis, bool highest) {
  std::vector<const GroupDatum*> fs;
  if (g.kind == GroupKind::product)
    for (const auto& f : g.factors) fs.push_back(&f);
  else
    fs.push_back(&g);

  std::vector<std::string> chunks;
  if (text.find('|') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, '|')) chunks.push_back(item);
    if (text.back() == '|') chunks.emplace_back();
    if (chunks.size() != fs.size())
      throw InputError("'" + text + "' has " + std::to_string(chunks.size()) + " blocks but " + g.name + " has " +
                       std::to_string(fs.size()) + " factors");
  } else if (fs.size() == 1) {
    chunks.push_back(text);
  }

  Weight out;
  if (!chunks.empty()) {
    for (std::size_t i = 0; i < fs.size(); ++i) {
      Weight w = factor_weight(*fs[i], parse_weight(chunks[i]), basis, highest);
      out.insert(out.end(), w.begin(), w.end());
    }
    return out;
  }
  Weight all = parse_weight(text);
  std::size_t pos = 0;
  for (const auto* f : fs) {
    auto len = chunk_length(*f, basis);
    if (!len || pos + *len > all.size())
      throw InputError("cannot split '" + text + "' among the factors of " + g.name + "; separate blocks with '|'");
    Weight part(all.begin() + pos, all.begin() + pos + *len);
    pos += *len;
    Weight w = factor_weight(*f, part, basis, highest);
    out.insert(out.end(), w.begin(), w.end());
  }
  if (pos != all.size())
    throw InputError("'" + text + "' has too many coordinates for " + g.name + "; separate blocks with '|'");
  return out;
}

}  // namespace liemult
