#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "liemult/kronecker.hpp"
#include "liemult/multiplicity.hpp"
#include "liemult/oracle.hpp"

using namespace liemult;
using Json = nlohmann::ordered_json;

namespace {

struct Common {
  bool json = false;
  bool oracle = false;
  unsigned threads = 0;
  std::string backend = "auto";
  std::string strategy = "auto";
  std::string basis = "auto";
};

struct MapArgs {
  std::string map = "identity";
  std::string group;
  std::string rows;
};

class Clock {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CountOptions count_options(const Common& c) {
  CountOptions o;
  o.backend = parse_backend(c.backend);
  return o;
}

MultiplicityOptions mult_options(const Common& c) {
  MultiplicityOptions o;
  o.count = count_options(c);
  o.threads = c.threads;
  return o;
}

Json record(const std::string& command, Json query, const MultiplicityResult& r, double ms) {
  Json j;
  j["command"] = command;
  j["query"] = std::move(query);
  j["result"] = r.value.get_str();
  j["backend"] = to_string(r.backend);
  j["term_count"] = r.term_count;
  j["wall_time_ms"] = ms;
  return j;
}

void emit(const Common& c, const Json& rec) {
  if (c.json)
    std::cout << rec.dump() << '\n';
  else
    std::cout << rec["result"].get<std::string>() << '\n';
}

std::vector<std::size_t> parse_sizes(const std::string& text, std::size_t n, const std::string& what) {
  Weight w = parse_weight(text);
  if (w.size() != n) throw InputError(what + " needs " + std::to_string(n) + " comma-separated values");
  std::vector<std::size_t> out;
  for (const auto& x : w) {
    if (x < 1 || !x.fits_ulong_p()) throw InputError(what + " values must be positive");
    out.push_back(x.get_ui());
  }
  return out;
}

std::pair<long, long> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw InputError("k range must look like a..b");
  try {
    long a = std::stol(text.substr(0, dots)), b = std::stol(text.substr(dots + 2));
    if (a < 1 || b < a) throw InputError("k range " + text + " is empty or not positive");
    return {a, b};
  } catch (const std::logic_error&) {
    throw InputError("cannot parse k range '" + text + "'");
  }
}

Integer json_integer(const Json& v) {
  if (v.is_string()) {
    try {
      return Integer(v.get<std::string>(), 10);
    } catch (const std::invalid_argument&) {
      throw InputError("bad integer '" + v.get<std::string>() + "'");
    }
  }
  if (v.is_number_integer()) return Integer(v.get<long>());
  throw InputError("expected an integer, got " + v.dump());
}

IntMatrix json_matrix(const Json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) throw InputError(what + " must be a nonempty array of rows");
  std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  IntMatrix m(v.size(), cols, Integer(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array() || v[i].size() != cols) throw InputError(what + " rows must have equal length");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = json_integer(v[i][j]);
  }
  return m;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

GroupDatum need_group(const MapArgs& m) {
  if (m.group.empty()) throw InputError("--group is required for --map " + m.map);
  return build_group(m.group);
}

RestrictionMap resolve_map(const MapArgs& m) {
  if (m.map == "identity") return identity_map(need_group(m));
  if (m.map == "diagonal") return diagonal_map(need_group(m));
  if (m.map == "torus") return torus_map(need_group(m));
  if (m.map == "kron") {
    if (m.rows.empty()) throw InputError("--map kron needs --rows a,b,c");
    auto r = parse_sizes(m.rows, 3, "--rows");
    return kronecker_map(r[0], r[1], r[2]);
  }
  Json j = read_json(m.map);
  if (!j.contains("source") || !j.contains("target") || !j.contains("matrix"))
    throw InputError(m.map + ": expected keys source, target, matrix");
  return matrix_map(build_group(j["source"].get<std::string>()), build_group(j["target"].get<std::string>()),
                    json_matrix(j["matrix"], "matrix"));
}

// Positional weights: lambda for G then mu for H. Extra positionals before mu
// are joined into lambda block by block (e.g. the two factors of a diagonal map).
std::pair<Weight, Weight> map_weights(const RestrictionMap& rm, const std::vector<std::string>& args, Basis basis,
                                      Json& query) {
  if (args.size() < 2) throw InputError("expected a highest weight for G and one for H");
  std::string lam = args[0];
  std::size_t split = 1;
  const std::size_t gf = rm.target.kind == GroupKind::product ? rm.target.factors.size() : 1;
  const std::size_t hf = rm.source.kind == GroupKind::product ? rm.source.factors.size() : 1;
  if (args.size() == gf + 1 || (args.size() == gf + hf && hf > 1)) {
    for (std::size_t i = 1; i < gf; ++i) lam += "|" + args[i];
    split = gf;
  }
  std::string mu = args[split];
  for (std::size_t i = split + 1; i < args.size(); ++i) mu += "|" + args[i];
  if (split == 1 && args.size() > 2 && hf == 1) throw InputError("too many weights");
  query["lambda"] = lam;
  query["mu"] = mu;
  return {parse_group_weight(rm.target, lam, basis, true), parse_group_weight(rm.source, mu, basis, true)};
}

Json map_query(const MapArgs& m, const RestrictionMap& rm) {
  Json q;
  q["map"] = m.map;
  q["G"] = rm.target.name;
  q["H"] = rm.source.name;
  return q;
}

void require_agreement(const Integer& value, const Integer& expected, const std::string& what) {
  if (value != expected)
    throw std::logic_error(what + " oracle disagrees: computed " + value.get_str() + ", oracle " + expected.get_str());
}

int run_kron(const Common& c, const std::vector<std::string>& args, const std::string& rows, const std::string& range) {
  if (args.size() != 3) throw InputError("kron takes three diagrams");
  YoungDiagram l = YoungDiagram::parse(args[0]), m = YoungDiagram::parse(args[1]), n = YoungDiagram::parse(args[2]);
  if (l.boxes() != m.boxes() || l.boxes() != n.boxes())
    throw InputError("diagrams " + l.str() + ", " + m.str() + ", " + n.str() + " have different numbers of boxes");
  KroneckerOptions o;
  o.count = count_options(c);
  o.threads = c.threads;
  KroneckerQuery q{l, m, n, {}, {}, {}};
  if (!rows.empty()) {
    auto r = parse_sizes(rows, 3, "--rows");
    q.a = r[0];
    q.b = r[1];
    q.c = r[2];
  }
  std::vector<long> ks{1};
  if (!range.empty()) {
    auto [a, b] = parse_range(range);
    ks.clear();
    for (long k = a; k <= b; ++k) ks.push_back(k);
  }
  KroneckerCache cache(o.count);
  for (long k : ks) {
    Clock clock;
    KroneckerQuery qk{l.scaled(k), m.scaled(k), n.scaled(k), q.a, q.b, q.c};
    MultiplicityResult r = kronecker_coefficient(qk, o, &cache);
    Json query;
    query["lambda"] = qk.lambda.str();
    query["mu"] = qk.mu.str();
    query["nu"] = qk.nu.str();
    if (!range.empty()) query["k"] = k;
    if (!rows.empty()) query["rows"] = rows;
    Json rec = record("kron", query, r, clock.ms());
    if (c.oracle) {
      if (qk.lambda.boxes() <= 10) {
        Integer expected = kronecker_oracle(qk.lambda, qk.mu, qk.nu);
        require_agreement(r.value, expected, "character table");
        rec["oracle"] = expected.get_str();
      } else {
        std::cerr << "liemult: oracle skipped, k > 10\n";
      }
    }
    emit(c, rec);
  }
  return 0;
}

int run_branch(const Common& c, const MapArgs& m, const std::vector<std::string>& args, const std::string& range) {
  RestrictionMap rm = resolve_map(m);
  Json query = map_query(m, rm);
  auto [lambda, mu] = map_weights(rm, args, parse_basis(c.basis), query);
  BranchingProblem bp{rm, parse_strategy(c.strategy)};
  query["strategy"] = to_string(resolve_strategy(bp));
  MultiplicityOptions o = mult_options(c);

  if (range.empty()) {
    Clock clock;
    MultiplicityResult r = branching_multiplicity(bp, lambda, mu, o);
    Json rec = record("branch", query, r, clock.ms());
    if (c.oracle) {
      if (m.map == "diagonal") {
        auto [l1, l2] = std::pair(Weight(lambda.begin(), lambda.begin() + rm.source.rank),
                                  Weight(lambda.begin() + rm.source.rank, lambda.end()));
        auto table = tensor_oracle(rm.source, l1, l2);
        Integer expected = table.count(mu) ? table[mu] : Integer(0);
        require_agreement(r.value, expected, "tensor product");
        rec["oracle"] = expected.get_str();
      } else if (m.map == "torus" || m.map == "identity") {
        Integer expected = 0;
        if (m.map == "torus") {
          auto ws = weight_system(rm.target, lambda);
          if (ws.count(mu)) expected = ws[mu];
        } else {
          expected = lambda == mu ? 1 : 0;
        }
        require_agreement(r.value, expected, "weight system");
        rec["oracle"] = expected.get_str();
      } else {
        std::cerr << "liemult: no oracle for --map " << m.map << "\n";
      }
    }
    emit(c, rec);
    return 0;
  }

  auto [a, b] = parse_range(range);
  std::vector<Json> recs;
  Brancher brancher(bp, o);
  for (long k = a; k <= b; ++k) {
    Clock clock;
    Weight kl = lambda, km = mu;
    for (auto& v : kl) v *= k;
    for (auto& v : km) v *= k;
    MultiplicityResult r = brancher(kl, km);
    Json q = query;
    q["k"] = k;
    recs.push_back(record("stretch", q, r, clock.ms()));
  }
  if (c.json) {
    for (const auto& r : recs) std::cout << r.dump() << '\n';
  } else {
    for (std::size_t i = 0; i < recs.size(); ++i)
      std::cout << (i ? "," : "") << recs[i]["result"].get<std::string>();
    std::cout << '\n';
  }
  return 0;
}

int run_weightmult(const Common& c, const std::vector<std::string>& args) {
  if (args.size() != 3) throw InputError("weightmult takes a group, a highest weight and a weight");
  GroupDatum g = build_group(args[0]);
  Basis basis = parse_basis(c.basis);
  Weight lambda = parse_group_weight(g, args[1], basis, true);
  Weight beta = parse_group_weight(g, args[2], basis, false);
  BranchingProblem bp{torus_map(g), parse_strategy(c.strategy)};
  Json query;
  query["G"] = g.name;
  query["lambda"] = args[1];
  query["beta"] = args[2];
  query["strategy"] = to_string(resolve_strategy(bp));
  Clock clock;
  MultiplicityResult r = branching_multiplicity(bp, lambda, beta, mult_options(c));
  Json rec = record("weightmult", query, r, clock.ms());
  if (c.oracle) {
    auto ws = weight_system(g, lambda);
    Integer expected = ws.count(beta) ? ws[beta] : Integer(0);
    require_agreement(r.value, expected, "weight system");
    rec["oracle"] = expected.get_str();
  }
  emit(c, rec);
  return 0;
}

int run_lr(const Common& c, const std::vector<std::string>& args) {
  if (args.size() != 4) throw InputError("lr takes a group and three highest weights");
  GroupDatum g = build_group(args[0]);
  Basis basis = parse_basis(c.basis);
  Weight l = parse_group_weight(g, args[1], basis), m = parse_group_weight(g, args[2], basis),
         n = parse_group_weight(g, args[3], basis);
  Json query;
  query["G"] = g.name;
  query["lambda"] = args[1];
  query["mu"] = args[2];
  query["nu"] = args[3];
  Clock clock;
  MultiplicityResult r = littlewood_richardson(g, l, m, n, mult_options(c));
  Json rec = record("lr", query, r, clock.ms());
  if (c.oracle) {
    auto table = tensor_oracle(g, l, m);
    Integer expected = table.count(n) ? table[n] : Integer(0);
    require_agreement(r.value, expected, "tensor product");
    rec["oracle"] = expected.get_str();
  }
  emit(c, rec);
  return 0;
}

int run_count(const Common& c, const std::string& path) {
  Json j = read_json(path);
  if (!j.contains("A") || !j.contains("b") || !j.contains("s"))
    throw InputError(path + ": expected keys A, b, s");
  ConcretePolytope q;
  q.A = json_matrix(j["A"], "A");
  if (!j["b"].is_array()) throw InputError("b must be an array");
  for (const auto& v : j["b"]) q.b.push_back(json_integer(v));
  if (!j["s"].is_number_unsigned()) throw InputError("s must be a nonnegative integer");
  q.s = j["s"].get<std::size_t>();
  Clock clock;
  CountResult r = count(q, count_options(c));
  MultiplicityResult m{r.value, r.backend, 1};
  Json query;
  query["file"] = path;
  query["dimension"] = r.dimension;
  Json rec = record("count-polytope", query, m, clock.ms());
  if (c.oracle) {
    Integer expected = count_enumeration(q);
    require_agreement(r.value, expected, "enumeration");
    rec["oracle"] = expected.get_str();
  }
  emit(c, rec);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact multiplicities of Lie group representations by lattice point counting"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", common.json, "Print a JSON record per result");
    sub->add_flag("--oracle", common.oracle, "Cross-check against an independent small-case method");
    sub->add_option("--threads", common.threads, "Worker threads (0: all cores)");
    sub->add_option("--backend", common.backend, "auto, enumeration or barvinok");
  };
  auto add_weights = [&](CLI::App* sub) {
    sub->add_option("--basis", common.basis, "Weight coordinates: auto, eps, fund or young");
    sub->add_option("--strategy", common.strategy, "auto, kostant or gt");
  };

  std::vector<std::string> args;
  std::string rows, range, file;
  MapArgs map;

  auto* kron = app.add_subcommand("kron", "Kronecker coefficient g(lambda, mu, nu)");
  add_common(kron);
  kron->add_option("--rows", rows, "Row bounds a,b,c");
  kron->add_option("--k-range", range, "Stretch factors a..b");
  kron->add_option("diagrams", args, "Three diagrams, e.g. 2,1 2,1 2,1")->required();

  auto* branch = app.add_subcommand("branch", "Multiplicity of mu in the restriction of lambda");
  auto* str = app.add_subcommand("stretch", "Branching multiplicities of (k lambda, k mu)");
  for (auto* sub : {branch, str}) {
    add_common(sub);
    add_weights(sub);
    sub->add_option("--map", map.map, "identity, diagonal, torus, kron or a JSON matrix file");
    sub->add_option("--group", map.group, "Group G (H for diagonal)");
    sub->add_option("--rows", map.rows, "a,b,c for --map kron");
    sub->add_option("weights", args, "lambda then mu; blocks may be given separately")->required();
  }
  str->add_option("--k-range", range, "Stretch factors a..b")->required();

  auto* wm = app.add_subcommand("weightmult", "Multiplicity of a weight beta in V_lambda");
  add_common(wm);
  add_weights(wm);
  wm->add_option("args", args, "Group, lambda, beta")->required();

  auto* lr = app.add_subcommand("lr", "Tensor product multiplicity of nu in lambda x mu");
  add_common(lr);
  add_weights(lr);
  lr->add_option("args", args, "Group, lambda, mu, nu")->required();

  auto* cp = app.add_subcommand("count-polytope", "Count integer points of {x : x_1..x_s >= 0, Ax = b}");
  add_common(cp);
  cp->add_option("file", file, "JSON file with A, b, s")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*kron) return run_kron(common, args, rows, range);
    if (*branch) return run_branch(common, map, args, "");
    if (*str) return run_branch(common, map, args, range);
    if (*wm) return run_weightmult(common, args);
    if (*lr) return run_lr(common, args);
    if (*cp) return run_count(common, file);
  } catch (const InputError& e) {
    std::cerr << "liemult: " << e.what() << '\n';
    return 2;
  } catch (const CountError& e) {
    std::cerr << "liemult: " << e.what() << '\n';
    return e.kind() == CountError::Kind::unbounded ? 2 : 1;
  } catch (const LimitError& e) {
    std::cerr << "liemult: " << e.what() << '\n';
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "liemult: bad input file: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "liemult: internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
