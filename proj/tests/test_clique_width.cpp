#include <doctest.h>

#include <random>

#include "cnc/bruteforce.hpp"
#include "cnc/clique_width.hpp"
#include "cnc/errors.hpp"
#include "support/cw_gen.hpp"
#include "support/oracles.hpp"

using namespace cnc;
using namespace cnc::testing;

namespace {

const char* kP3 = "j(2,3,u(j(1,2,u(v(1),v(2))),v(3)))";
const char* kP4 = "j(3,4,u(j(2,3,u(j(1,2,u(v(1),v(2))),v(3))),v(4)))";
const char* kK3 = "j(1,3,j(2,3,u(j(1,2,u(v(1),v(2))),v(3))))";

// Signature of S directly on a labeled graph: labels 1..w map to bits 0..w-1.
cw::Signature direct_signature(const Graph& g, const std::vector<int>& label, const std::vector<int>& members,
                               const std::vector<char>& removed, int w) {
  const int sets = 1 << w;
  cw::Signature s(2 * sets, 0);
  std::vector<char> gone(g.size(), 1);
  for (int v : members) gone[v] = removed[v];
  for (const auto& comp : components(g, gone)) {
    int mask = 0;
    for (int v : comp) mask |= 1 << (label[v] - 1);
    s[mask] += static_cast<std::uint32_t>(comp.size());
    s[sets + mask] += static_cast<std::uint32_t>(choose2(comp.size()));
  }
  return s;
}

}  // namespace

TEST_CASE("expression parsing") {
  auto edge = cw::parse_expression("j(1,2,u(v(1),v(2)))");
  CHECK(cw::evaluate(edge).graph == path_graph(2));
  CHECK(edge.width == 2);
  auto single = cw::parse_expression(" v( 1 ) ");
  CHECK(cw::evaluate(single).graph == Graph(1));
  CHECK_THROWS_AS(cw::parse_expression("j(1,2,j(1,2,u(v(1),v(2))))"), InputError);
  CHECK_THROWS_AS(cw::parse_expression("v(0)"), InputError);
  CHECK_THROWS_AS(cw::parse_expression("v(33)"), InputError);
  CHECK_THROWS_AS(cw::parse_expression("j(1,1,v(1))"), InputError);
  CHECK_THROWS_AS(cw::parse_expression("u(v(1))"), InputError);
  CHECK_THROWS_AS(cw::parse_expression("x(1)"), InputError);
  CHECK_THROWS_AS(cw::parse_expression("v(1) v(2)"), InputError);
}

TEST_CASE("expression evaluation") {
  CHECK(cw::evaluate(cw::parse_expression(kP3)).graph == path_graph(3));
  CHECK(cw::evaluate(cw::parse_expression("u(v(1),v(1))")).graph == Graph(2));
  CHECK(cw::evaluate(cw::parse_expression(kK3)).graph == complete_graph(3));
  auto e = cw::parse_expression("r(1,2,u(v(1),v(2)))");
  auto lg = cw::evaluate(e);
  CHECK(lg.label == std::vector<int>{2, 2});

  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 50; ++rep) {
    auto text = random_cw_expression(1 + rng() % 8, 3, rng);
    auto parsed = cw::parse_expression(text);
    CHECK(cw::to_string(parsed) == text);
  }
}

TEST_CASE("clique-width counting examples") {
  auto p3 = cw::count_solutions(cw::parse_expression(kP3));
  CHECK(p3.per_size[1].min_pairs == 0);
  CHECK(p3.per_size[1].count == 1);
  CHECK(p3.per_size[1].witness == std::vector<int>{1});
  auto p4 = cw::count_solutions(cw::parse_expression(kP4));
  CHECK(p4.per_size[1].min_pairs == 1);
  CHECK(p4.per_size[1].count == 2);
  auto k3 = cw::count_solutions(cw::parse_expression(kK3));
  CHECK(k3.per_size[0].min_pairs == 3);
  CHECK(k3.per_size[0].count == 1);
  CHECK(k3.per_size[3].min_pairs == 0);
  CHECK(k3.per_size[3].count == 1);
  CHECK(cw::solve(cw::parse_expression(kP4), 1).pairs == 1);
}

TEST_CASE("clique-width counts match brute force") {
  std::mt19937_64 rng(123);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + rng() % 10;
    auto e = cw::parse_expression(random_cw_expression(n, 2 + rng() % 2, rng));
    const Graph g = cw::evaluate(e).graph;
    auto counts = cw::count_solutions(e);
    CHECK(counts.levels_checked > 0);
    BruteForceOptions full;
    full.full_counts = true;
    auto brute = solve_bruteforce({g, n, 0}, full);
    REQUIRE(counts.per_size.size() == static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
      CHECK(counts.per_size[k].min_pairs == brute.per_size[k].min_pairs);
      CHECK(counts.per_size[k].count == brute.per_size[k].count);
      CHECK(static_cast<int>(counts.per_size[k].witness.size()) == k);
      CHECK(naive_pairs(g, counts.per_size[k].witness) == counts.per_size[k].min_pairs);
    }
  }
}

TEST_CASE("node rules agree with direct signatures") {
  std::mt19937_64 rng(321);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 1 + rng() % 8;
    const int w = 3;
    auto e = cw::parse_expression(random_cw_expression(n, w, rng));
    std::vector<char> removed(n);
    for (auto& r : removed) r = rng() % 3 == 0;

    // Replay the expression, keeping per-node members, labels and edges.
    Graph g(n);
    std::vector<int> label(n, 0);
    std::vector<std::vector<int>> members(e.nodes.size());
    std::vector<cw::Signature> sig(e.nodes.size());
    for (std::size_t x = 0; x < e.nodes.size(); ++x) {
      const auto& node = e.nodes[x];
      cw::Signature expected;
      switch (node.op) {
        case cw::Op::intro:
          label[node.vertex] = node.a;
          members[x] = {node.vertex};
          break;
        case cw::Op::join_union:
          members[x] = members[node.kids[0]];
          members[x].insert(members[x].end(), members[node.kids[1]].begin(), members[node.kids[1]].end());
          expected = cw::signature_union(sig[node.kids[0]], sig[node.kids[1]]);
          break;
        case cw::Op::rename:
          members[x] = members[node.kids[0]];
          for (int v : members[x])
            if (label[v] == node.a) label[v] = node.b;
          expected = cw::signature_rename(sig[node.kids[0]], node.a - 1, node.b - 1);
          break;
        case cw::Op::join:
          members[x] = members[node.kids[0]];
          for (int u : members[x])
            for (int v : members[x])
              if (label[u] == node.a && label[v] == node.b) g.add_edge(u, v);
          expected = cw::signature_join(sig[node.kids[0]], node.a - 1, node.b - 1);
          break;
      }
      sig[x] = direct_signature(g, label, members[x], removed, w);
      if (node.op != cw::Op::intro) CHECK(expected == sig[x]);
    }
  }
}

TEST_CASE("join with a fully deleted side is the identity") {
  // Two classes: {label 1} of size 2 and {label 3} of size 1; no label 2.
  cw::Signature s(16, 0);
  s[1] = 2;
  s[8 + 1] = 1;
  s[4] = 1;
  CHECK(cw::signature_join(s, 0, 1) == s);
  auto merged = cw::signature_join(s, 0, 2);
  CHECK(merged[5] == 3);
  CHECK(merged[8 + 5] == 3);
  CHECK(merged[1] == 0);
  CHECK(merged[4] == 0);
}

TEST_CASE("clique-width caps") {
  cw::Options tight;
  tight.max_width = 1;
  CHECK_THROWS_AS(cw::count_solutions(cw::parse_expression(kP3), tight), CapExceeded);
  tight = {};
  tight.max_vertices = 2;
  CHECK_THROWS_AS(cw::count_solutions(cw::parse_expression(kP3), tight), CapExceeded);
}
