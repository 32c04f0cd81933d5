#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "cnc/bruteforce.hpp"
#include "cnc/clique_width.hpp"
#include "cnc/errors.hpp"
#include "cnc/graph_io.hpp"
#include "cnc/maxleaf.hpp"
#include "cnc/modular_width.hpp"
#include "cnc/reductions.hpp"
#include "cnc/tree_decomposition.hpp"
#include "cnc/treewidth.hpp"
#include "cnc/vertex_integrity.hpp"

namespace cnc {

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitInternal = 3;

struct Caps {
  std::uint64_t oracle = 100'000'000;
  int max_high_degree = 25;
  int max_separator = 12;
  int max_component = 12;
  int max_mw = 20;
  int max_cw_width = 4;
  int max_cw_vertices = 14;
  int max_tw_exact = 8;
  int max_tw_apx = 12;
  Count max_vertices = 1'000'000;
};

void add_cap_flags(CLI::App* app, Caps& caps) {
  app->add_option("--cap-oracle", caps.oracle, "Max deletion sets examined by the oracle");
  app->add_option("--max-high-degree", caps.max_high_degree, "maxleaf: max vertices of degree >= 3");
  app->add_option("--max-separator", caps.max_separator, "vi: max separator size");
  app->add_option("--max-component", caps.max_component, "vi: max component size");
  app->add_option("--max-mw", caps.max_mw, "mw: max modular width");
  app->add_option("--max-cw-width", caps.max_cw_width, "cw: max labels");
  app->add_option("--max-cw-vertices", caps.max_cw_vertices, "cw: max vertices");
  app->add_option("--max-tw-exact", caps.max_tw_exact, "tw-exact: max decomposition width");
  app->add_option("--max-tw-apx", caps.max_tw_apx, "tw-apx: max decomposition width");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json one_based(const std::vector<int>& vs) {
  json out = json::array();
  for (int v : vs) out.push_back(v + 1);
  return out;
}

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

// "1,3, 5" -> {0, 2, 4}; empty string -> {}.
std::vector<int> parse_set(const std::string& text, int n) {
  std::vector<int> out;
  std::string token;
  std::istringstream ss(text);
  while (std::getline(ss, token, ',')) {
    const auto first = token.find_first_not_of(" \t");
    if (first == std::string::npos) {
      if (text.find_first_not_of(" \t") == std::string::npos) continue;
      throw InputError("empty entry in vertex set");
    }
    token = token.substr(first, token.find_last_not_of(" \t") - first + 1);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw InputError("bad vertex '" + token + "'");
    }
    if (used != token.size()) throw InputError("bad vertex '" + token + "'");
    if (v < 1 || v > n) throw InputError("vertex " + token + " out of range [1," + std::to_string(n) + "]");
    out.push_back(static_cast<int>(v - 1));
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw InputError("repeated vertex in set");
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string algo, in, expr, td;
  double eps = 0.5;
  std::optional<int> k;
  std::optional<Count> x;
  Caps caps;
};

json run_solve(const SolveArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  Instance inst;
  std::optional<Count> x = a.x;
  std::optional<int> k = a.k;
  std::optional<cw::Expression> expr;

  auto take_file = [&](const GraphFile& f) {
    if (!k && f.k) k = *f.k;
    if (!x && f.x) x = *f.x;
  };
  if (a.algo == "cw") {
    if (a.expr.empty()) throw InputError("--algo cw requires --expr");
    expr = cw::parse_expression(read_text(a.expr));
    inst.graph = cw::evaluate(*expr).graph;
    if (!a.in.empty()) {
      auto f = read_graph_file(a.in);
      if (!(f.graph == inst.graph)) throw InputError("expression does not build the graph in " + a.in);
      take_file(f);
    }
  } else {
    if (a.in.empty()) throw InputError("--in is required");
    auto f = read_graph_file(a.in);
    inst.graph = std::move(f.graph);
    take_file(f);
  }
  if (!k) throw InputError("budget missing: pass --k or add a 'b' line to the graph file");
  if (*k < 0) throw InputError("--k must be non-negative");
  inst.k = *k;
  inst.x = x.value_or(0);

  json rec;
  rec["command"] = "solve";
  rec["algo"] = a.algo;
  if (!a.in.empty()) rec["input"] = a.in;
  if (!a.expr.empty()) rec["expr"] = a.expr;
  if (!a.td.empty()) rec["td"] = a.td;

  Solution sol;
  if (a.algo == "oracle") {
    BruteForceOptions o;
    o.cap = a.caps.oracle;
    sol = solve_bruteforce(inst, o).witness;
  } else if (a.algo == "maxleaf") {
    sol = maxleaf::solve(inst, {a.caps.max_high_degree});
  } else if (a.algo == "vi") {
    sol = vi::solve(inst, {a.caps.max_separator, a.caps.max_component});
  } else if (a.algo == "mw") {
    sol = mw::solve(inst, {a.caps.max_mw});
  } else if (a.algo == "cw") {
    cw::Options o;
    o.max_width = a.caps.max_cw_width;
    o.max_vertices = a.caps.max_cw_vertices;
    sol = cw::solve(*expr, inst.k, o);
  } else if (a.algo == "tw-exact" || a.algo == "tw-apx") {
    tw::Options o;
    o.mode = a.algo == "tw-exact" ? tw::Mode::exact : tw::Mode::apx;
    o.eps = a.eps;
    o.max_width_exact = a.caps.max_tw_exact;
    o.max_width_apx = a.caps.max_tw_apx;
    if (!a.td.empty()) o.td = read_td(a.td);
    auto r = tw::solve(inst, o);
    sol = r.solution;
    rec["width"] = r.width;
    rec["height"] = r.height;
    if (o.mode == tw::Mode::apx) rec["eps"] = a.eps;
  } else {
    throw InputError("unknown algorithm '" + a.algo + "'");
  }
  verify_solution(inst, sol);

  rec["n"] = inst.graph.size();
  rec["m"] = inst.graph.edge_count();
  rec["k"] = inst.k;
  rec["opt"] = sol.pairs;
  rec["witness"] = one_based(sol.deleted);
  rec["optimal"] = sol.optimal;
  if (x) {
    rec["x"] = *x;
    rec["decision"] = sol.pairs <= *x;
  }
  rec["wall_ms"] = elapsed_ms(start);
  rec["caps_hit"] = json::array();
  return rec;
}

// ---------------------------------------------------------------------------

struct CountArgs {
  std::string algo = "cw", expr;
  std::optional<int> k;
  Caps caps;
};

std::vector<json> run_count(const CountArgs& a) {
  if (a.algo != "cw") throw InputError("count supports only --algo cw");
  if (a.expr.empty()) throw InputError("count requires --expr");
  auto e = cw::parse_expression(read_text(a.expr));
  cw::Options o;
  o.max_width = a.caps.max_cw_width;
  o.max_vertices = a.caps.max_cw_vertices;
  auto counts = cw::count_solutions(e, o);
  const Graph g = cw::evaluate(e).graph;
  if (a.k && (*a.k < 0 || *a.k > e.vertices)) throw InputError("--k outside [0, n]");
  std::vector<json> out;
  for (int k = 0; k <= e.vertices; ++k) {
    if (a.k && k != *a.k) continue;
    const auto& s = counts.per_size[k];
    if (pairs_without(g, s.witness) != s.min_pairs) throw std::logic_error("count witness disagrees");
    json rec;
    rec["command"] = "count";
    rec["k"] = k;
    rec["min"] = s.min_pairs;
    rec["count"] = s.count.str();
    rec["witness"] = one_based(s.witness);
    out.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  int n = 0;
  double p = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<int> k;
  std::optional<Count> x;
};

Graph generate(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Compare raw 64-bit draws against a fixed threshold so the output does not
  // depend on the standard library's distribution implementations.
  const long double scaled = static_cast<long double>(p) * 18446744073709551616.0L;
  const std::uint64_t threshold = p >= 1 ? 0 : static_cast<std::uint64_t>(scaled);
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const std::uint64_t draw = rng();
      if (p >= 1 || draw < threshold) g.add_edge(u, v);
    }
  return g;
}

void write_generated(std::ostream& os, const GenArgs& a, const Graph& g) {
  os << "c gen-random n=" << a.n << " p=" << a.p << " seed=" << a.seed << '\n';
  write_graph(os, g);
  if (a.k) os << "b " << *a.k << ' ' << a.x.value_or(0) << '\n';
}

std::optional<json> run_gen(const GenArgs& a, std::ostream& out) {
  if (a.n < 0 || a.n > 100'000) throw InputError("--n must lie in [0, 100000]");
  if (!(a.p >= 0 && a.p <= 1)) throw InputError("--p must lie in [0, 1]");
  if (a.k && (*a.k < 0 || *a.k > a.n)) throw InputError("--k must lie in [0, n]");
  const Graph g = generate(a.n, a.p, a.seed);
  if (a.out.empty()) {
    write_generated(out, a, g);
    return std::nullopt;
  }
  std::ofstream f(a.out);
  if (!f) throw InputError("cannot write " + a.out);
  write_generated(f, a, g);
  json rec;
  rec["command"] = "gen-random";
  rec["out"] = a.out;
  rec["n"] = a.n;
  rec["m"] = g.edge_count();
  rec["seed"] = a.seed;
  return rec;
}

// ---------------------------------------------------------------------------

struct ReduceArgs {
  std::string kind, in, out, roles;
  bool check = false;
  Caps caps;
};

json roles_json(const std::vector<Role>& roles, const Graph* weighted, const std::vector<int>* origin) {
  json vs = json::array();
  std::vector<int> first_tail;
  if (origin) {
    first_tail.assign(roles.size(), -1);
    for (std::size_t v = roles.size(); v < origin->size(); ++v)
      if (first_tail[(*origin)[v]] < 0) first_tail[(*origin)[v]] = static_cast<int>(v);
  }
  for (std::size_t v = 0; v < roles.size(); ++v) {
    json r;
    r["vertex"] = v + 1;
    r["kind"] = roles[v].kind;
    r["index"] = roles[v].index;
    if (weighted) {
      r["weight"] = weighted->weight(static_cast<int>(v));
      if (first_tail[v] >= 0) r["tail_first"] = first_tail[v] + 1;
    }
    vs.push_back(std::move(r));
  }
  return vs;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

json run_reduce(const ReduceArgs& a) {
  json rec;
  rec["command"] = "reduce";
  rec["kind"] = a.kind;
  rec["input"] = a.in;
  rec["out"] = a.out;
  json roles;
  const Instance* inst = nullptr;
  RubpReduction rubp;
  McReduction mc;
  if (a.kind == "rubp") {
    auto r = read_rubp(a.in);
    rubp = reduce_rubp(r, a.caps.max_vertices);
    inst = &rubp.instance;
    const auto& c = rubp.constants;
    rec["constants"] = {{"B", c.B}, {"c", c.c}, {"M", c.M}, {"L", c.L}, {"T", c.T}};
    auto rep = check_rubp_param_bounds(rubp);
    rec["params"] = {{"fes", rep.fes},
                     {"fes_bound", rep.fes_bound},
                     {"clique_degree", rep.clique_degree_max},
                     {"clique_degree_expected", rep.clique_degree_expected},
                     {"ok", rep.ok()}};
    roles = {{"kind", "rubp"}, {"vertices", roles_json(rubp.roles, &rubp.weighted, &rubp.origin)}};
    if (a.check) {
      auto brute = rubp_brute(r, a.caps.oracle);
      rec["seed_yes"] = brute.yes;
      if (brute.yes) {
        auto sol = rubp_witness(rubp, brute.assignment);
        rec["witness"] = one_based(sol.deleted);
        rec["witness_pairs"] = sol.pairs;
      }
    }
  } else if (a.kind == "mc") {
    auto m = read_mc(a.in);
    mc = reduce_mc(m);
    inst = &mc.instance;
    rec["constants"] = {{"log_n", mc.log_n}, {"A", mc.A}, {"dummy_groups", mc.dummy_groups},
                        {"vertex_cover_bound", 3 * m.k * mc.log_n + 1}};
    roles = {{"kind", "mc"}, {"vertices", roles_json(mc.roles, nullptr, nullptr)}};
    if (a.check) {
      auto brute = mc_brute(m, a.caps.oracle);
      rec["seed_yes"] = brute.yes;
      if (brute.yes) {
        auto sol = mc_witness(mc, brute.clique);
        rec["witness"] = one_based(sol.deleted);
        rec["witness_pairs"] = sol.pairs;
      }
    }
  } else {
    throw InputError("reduce kind must be rubp or mc");
  }
  std::ostringstream text;
  text << "c reduced from " << a.kind << " instance " << a.in << '\n';
  write_instance(text, *inst);
  write_file(a.out, text.str());
  if (!a.roles.empty()) write_file(a.roles, roles.dump() + "\n");
  rec["n"] = inst->graph.size();
  rec["m"] = inst->graph.edge_count();
  rec["k"] = inst->k;
  rec["x"] = inst->x;
  return rec;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string in, set;
  std::optional<int> k;
  std::optional<Count> x;
};

json run_verify(const VerifyArgs& a) {
  auto f = read_graph_file(a.in);
  const auto deleted = parse_set(a.set, f.graph.size());
  const Count pairs = pairs_without(f.graph, deleted);
  const std::optional<int> k = a.k ? a.k : f.k;
  const std::optional<Count> x = a.x ? a.x : f.x;
  json rec;
  rec["command"] = "verify-witness";
  rec["input"] = a.in;
  rec["size"] = deleted.size();
  rec["pairs"] = pairs;
  bool pass = true;
  if (k) {
    rec["k"] = *k;
    rec["within_budget"] = static_cast<int>(deleted.size()) <= *k;
    pass = pass && static_cast<int>(deleted.size()) <= *k;
  }
  if (x) {
    rec["x"] = *x;
    pass = pass && pairs <= *x;
  }
  rec["pass"] = pass;
  return rec;
}

// ---------------------------------------------------------------------------

struct ParamsArgs {
  std::string in;
  bool mw = false, tw = false;
};

json run_params(const ParamsArgs& a) {
  const Graph g = read_graph_file(a.in).graph;
  const auto rep = parameter_report(g);
  json rec;
  rec["command"] = "params";
  rec["input"] = a.in;
  rec["n"] = g.size();
  rec["m"] = g.edge_count();
  rec["components"] = rep.components;
  rec["fes"] = rep.fes;
  rec["max_degree"] = rep.max_degree;
  int high = 0;
  for (int v = 0; v < g.size(); ++v) high += g.degree(v) >= 3;
  rec["high_degree_vertices"] = high;
  if (a.mw) rec["modular_width"] = mw::width(mw::modular_decomposition(g));
  if (a.tw) rec["treewidth_upper_bound"] = heuristic_td(g).width();
  return rec;
}

// ---------------------------------------------------------------------------

struct DecompArgs {
  std::string in, kind, out, td;
  Caps caps;
};

std::optional<json> run_decomp(const DecompArgs& a, std::ostream& out) {
  const Graph g = read_graph_file(a.in).graph;
  json rec;
  rec["command"] = "decomp";
  rec["kind"] = a.kind;
  rec["input"] = a.in;
  if (a.kind == "td") {
    auto td = heuristic_td(g);
    validate(td, g);
    if (a.out.empty()) {
      write_td(out, td, g.size());
      return std::nullopt;
    }
    std::ostringstream text;
    write_td(text, td, g.size());
    write_file(a.out, text.str());
    rec["out"] = a.out;
    rec["width"] = td.width();
    rec["bags"] = td.bags.size();
  } else if (a.kind == "nice") {
    TreeDecomposition td = a.td.empty() ? heuristic_td(g) : read_td(a.td);
    validate(td, g);
    auto nice = nicify(td);
    check_nice(nice);
    int counts[4] = {0, 0, 0, 0};
    for (const auto& node : nice.nodes) ++counts[static_cast<int>(node.kind)];
    rec["width"] = nice.width();
    rec["height"] = nice.height();
    rec["nodes"] = nice.nodes.size();
    rec["leaves"] = counts[0];
    rec["introduce"] = counts[1];
    rec["forget"] = counts[2];
    rec["join"] = counts[3];
  } else if (a.kind == "md") {
    mw::print_tree(out, mw::modular_decomposition(g));
    return std::nullopt;
  } else if (a.kind == "mw") {
    auto root = mw::modular_decomposition(g);
    std::ostringstream tree;
    mw::print_tree(tree, root);
    rec["width"] = mw::width(root);
    rec["root"] = mw::kind_name(root.kind);
    rec["tree"] = tree.str();
  } else if (a.kind == "vi") {
    auto d = vi::decompose(g, {a.caps.max_separator, a.caps.max_component});
    rec["p"] = d.p;
    rec["separator"] = one_based(d.separator);
    json sizes = json::array();
    for (const auto& c : d.components) sizes.push_back(c.size());
    rec["component_sizes"] = sizes;
  } else {
    throw InputError("decomp kind must be td, nice, md, mw or vi");
  }
  return rec;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical node cut solvers, decompositions and reductions"};
  app.name("cnc");
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve an instance with one algorithm");
  s->add_option("--algo", solve.algo, "oracle|maxleaf|vi|mw|cw|tw-exact|tw-apx")
      ->required()
      ->check(CLI::IsMember({"oracle", "maxleaf", "vi", "mw", "cw", "tw-exact", "tw-apx"}));
  s->add_option("--in", solve.in, "Graph file");
  s->add_option("--expr", solve.expr, "Clique-width expression file (cw)");
  s->add_option("--td", solve.td, "Tree decomposition in PACE format (tw)");
  s->add_option("--eps", solve.eps, "Approximation parameter (tw-apx)");
  s->add_option("--k", solve.k, "Deletion budget (overrides the file)");
  s->add_option("--x", solve.x, "Pair threshold for the decision field");
  add_cap_flags(s, solve.caps);

  CountArgs count;
  auto* c = app.add_subcommand("count", "Per-size minimum and number of optimal sets");
  c->add_option("--algo", count.algo, "cw")->check(CLI::IsMember({"cw"}));
  c->add_option("--expr", count.expr, "Clique-width expression file")->required();
  c->add_option("--k", count.k, "Only this size");
  add_cap_flags(c, count.caps);

  GenArgs gen;
  auto* g = app.add_subcommand("gen-random", "Seeded G(n, p) graph");
  g->add_option("--n", gen.n, "Vertices")->required();
  g->add_option("--p", gen.p, "Edge probability")->required();
  g->add_option("--seed", gen.seed, "RNG seed")->required();
  g->add_option("--out", gen.out, "Output file (stdout if absent)");
  g->add_option("--k", gen.k, "Write a budget line");
  g->add_option("--x", gen.x, "Threshold for the budget line");

  ReduceArgs reduce;
  auto* r = app.add_subcommand("reduce", "Build a CNC instance from a seed problem");
  r->add_option("kind", reduce.kind, "rubp|mc")->required()->check(CLI::IsMember({"rubp", "mc"}));
  r->add_option("--in", reduce.in, "Seed instance file")->required();
  r->add_option("--out", reduce.out, "Output instance file")->required();
  r->add_option("--roles", reduce.roles, "Write vertex roles as JSON");
  r->add_flag("--check", reduce.check, "Solve the seed instance and verify the witness");
  r->add_option("--max-vertices", reduce.caps.max_vertices, "Size guard on the reduced graph");
  r->add_option("--cap-oracle", reduce.caps.oracle, "Cap for the seed brute force");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify-witness", "Recompute pairs after deleting a set");
  v->add_option("--in", verify.in, "Graph file")->required();
  v->add_option("--set", verify.set, "Comma-separated 1-based vertices")->required();
  v->add_option("--k", verify.k, "Budget");
  v->add_option("--x", verify.x, "Pair threshold");

  ParamsArgs params;
  auto* p = app.add_subcommand("params", "Structural parameters of a graph");
  p->add_option("--in", params.in, "Graph file")->required();
  p->add_flag("--mw", params.mw, "Also compute the modular width");
  p->add_flag("--tw", params.tw, "Also report a heuristic treewidth upper bound");

  DecompArgs decomp;
  auto* d = app.add_subcommand("decomp", "Print a decomposition");
  d->add_option("--in", decomp.in, "Graph file")->required();
  d->add_option("--kind", decomp.kind, "td|nice|md|mw|vi")->required()->check(CLI::IsMember({"td", "nice", "md", "mw", "vi"}));
  d->add_option("--out", decomp.out, "Output file (td)");
  d->add_option("--td", decomp.td, "Tree decomposition to nicify (nice)");
  d->add_option("--max-separator", decomp.caps.max_separator, "vi: max separator size");
  d->add_option("--max-component", decomp.caps.max_component, "vi: max component size");

  std::vector<std::string> argv_store{"cnc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  std::string command = "unknown";
  for (auto* sub : app.get_subcommands()) command = sub->get_name();
  try {
    if (s->parsed()) {
      emit(out, run_solve(solve));
    } else if (c->parsed()) {
      for (const auto& rec : run_count(count)) emit(out, rec);
    } else if (g->parsed()) {
      if (auto rec = run_gen(gen, out)) emit(out, *rec);
    } else if (r->parsed()) {
      emit(out, run_reduce(reduce));
    } else if (v->parsed()) {
      emit(out, run_verify(verify));
    } else if (p->parsed()) {
      emit(out, run_params(params));
    } else if (d->parsed()) {
      if (auto rec = run_decomp(decomp, out)) emit(out, *rec);
    }
  } catch (const CapExceeded& e) {
    json rec;
    rec["command"] = command;
    rec["status"] = "cap refused";
    rec["caps_hit"] = json::array({e.what()});
    emit(out, rec);
    err << "cap exceeded: " << e.what() << '\n';
    return kExitCap;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace cnc
