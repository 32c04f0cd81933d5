#include <doctest.h>

#include <random>
#include <sstream>

#include "cnc/bruteforce.hpp"
#include "cnc/errors.hpp"
#include "cnc/modular_width.hpp"
#include "support/oracles.hpp"

using namespace cnc;
using namespace cnc::testing;

namespace {

bool is_module(const Graph& g, const std::vector<int>& m) {
  std::vector<char> in(g.size(), 0);
  for (int v : m) in[v] = 1;
  for (int w = 0; w < g.size(); ++w) {
    if (in[w]) continue;
    for (int v : m)
      if (g.has_edge(w, v) != g.has_edge(w, m[0])) return false;
  }
  return true;
}

// A graph is prime when its only modules are trivial.
bool is_prime(const Graph& h) {
  const int n = h.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int c = __builtin_popcount(mask);
    if (c < 2 || c == n) continue;
    std::vector<int> m;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) m.push_back(v);
    if (is_module(h, m)) return false;
  }
  return true;
}

void check_node(const Graph& g, const mw::MDNode& b) {
  CHECK(is_module(g, b.vertices));
  if (b.kind == mw::NodeKind::leaf) {
    CHECK(b.vertices.size() == 1);
    return;
  }
  CHECK(b.children.size() >= 2);
  const int l = b.quotient.size();
  CHECK(l == static_cast<int>(b.children.size()));
  if (b.kind == mw::NodeKind::parallel) CHECK(b.quotient.edge_count() == 0);
  if (b.kind == mw::NodeKind::series) CHECK(b.quotient.edge_count() == static_cast<std::size_t>(l * (l - 1) / 2));
  if (b.kind == mw::NodeKind::prime) CHECK(is_prime(b.quotient));
  for (const auto& c : b.children) check_node(g, c);
}

}  // namespace

TEST_CASE("modular decomposition examples") {
  auto k3 = mw::modular_decomposition(complete_graph(3));
  CHECK(k3.kind == mw::NodeKind::series);
  CHECK(k3.children.size() == 3);
  auto iso = mw::modular_decomposition(Graph(3));
  CHECK(iso.kind == mw::NodeKind::parallel);
  CHECK(iso.children.size() == 3);
  auto p4 = mw::modular_decomposition(path_graph(4));
  CHECK(p4.kind == mw::NodeKind::prime);
  CHECK(p4.children.size() == 4);
  CHECK(is_prime(path_graph(4)));
  CHECK(mw::width(p4) == 4);

  std::ostringstream out;
  mw::print_tree(out, k3);
  CHECK(out.str() == "series (3 children, 3 vertices)\n  leaf 1\n  leaf 2\n  leaf 3\n");
}

TEST_CASE("modular decomposition is valid and reconstructs the graph") {
  std::mt19937_64 rng(55);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + rng() % 10;
    Graph g = random_graph(n, rep % 3 == 0 ? 0.2 : rep % 3 == 1 ? 0.5 : 0.8, rng);
    auto root = mw::modular_decomposition(g);
    CHECK(mw::reconstruct(root, n) == g);
    check_node(g, root);
  }
}

TEST_CASE("modular-width node functions") {
  const Cost inf = Cost::infinity();
  mw::MDNode leaf;
  leaf.vertices = {0};
  CHECK(mw::node_function(leaf, {}, 2).f == BudgetFunction{0, inf, inf});

  auto k3 = mw::modular_decomposition(complete_graph(3));
  std::vector<mw::NodeTable> leaves(3, mw::node_function(leaf, {}, 1));
  CHECK(mw::node_function(k3, leaves, 1).f(1) == Cost(1));

  Graph two_k2(4);
  two_k2.add_edge(0, 1);
  two_k2.add_edge(2, 3);
  auto root = mw::modular_decomposition(two_k2);
  REQUIRE(root.kind == mw::NodeKind::parallel);
  std::vector<mw::NodeTable> kids;
  for (const auto& c : root.children) {
    std::vector<mw::NodeTable> l2(2, mw::node_function(leaf, {}, 1));
    kids.push_back(mw::node_function(c, l2, 1));
  }
  CHECK(mw::node_function(root, kids, 1).f(1) == Cost(1));
}

TEST_CASE("modular-width solver") {
  CHECK(mw::solve({complete_graph(3), 1, 0}).pairs == 1);
  CHECK(mw::solve({path_graph(4), 1, 0}).pairs == 1);
  Graph k22(4);
  k22.add_edge(0, 2);
  k22.add_edge(0, 3);
  k22.add_edge(1, 2);
  k22.add_edge(1, 3);
  CHECK(mw::solve({k22, 1, 0}).pairs == 3);

  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + rng() % 10;
    Instance inst{random_graph(n, rep % 2 ? 0.2 : 0.5, rng), static_cast<int>(rng() % (n + 1)), 0};
    auto sol = mw::solve(inst);
    verify_solution(inst, sol);
    CHECK(sol.pairs == solve_bruteforce(inst).opt);
  }

  mw::Options tight;
  tight.max_width = 3;
  CHECK_THROWS_AS(mw::solve({path_graph(4), 1, 0}, tight), CapExceeded);
}

TEST_CASE("root function equals per-size brute force") {
  // f_r(k') is the exact-size optimum for every k' < n.
  std::mt19937_64 rng(91);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 2 + rng() % 7;
    Graph g = random_graph(n, 0.45, rng);
    auto root = mw::modular_decomposition(g);
    auto rec = [&](auto&& self, const mw::MDNode& b) -> mw::NodeTable {
      std::vector<mw::NodeTable> kids;
      for (const auto& c : b.children) kids.push_back(self(self, c));
      return mw::node_function(b, kids, n);
    };
    auto table = rec(rec, root);
    BruteForceOptions full;
    full.full_counts = true;
    auto brute = solve_bruteforce({g, n, 0}, full);
    for (int j = 0; j < n; ++j) CHECK(table.f(j) == Cost(brute.per_size[j].min_pairs));
    CHECK(table.f(n).is_infinite());
  }
}
