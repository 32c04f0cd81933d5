#include <doctest.h>

#include <random>

#include "cnc/bruteforce.hpp"
#include "cnc/errors.hpp"
#include "cnc/vertex_integrity.hpp"
#include "support/oracles.hpp"

using namespace cnc;
using namespace cnc::testing;

namespace {

// Exhaustive vertex integrity: min over U of |U| + largest component.
int naive_vi(const Graph& g) {
  const int n = g.size();
  int best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<char> removed(n, 0);
    for (int v = 0; v < n; ++v) removed[v] = mask >> v & 1;
    std::size_t largest = 0;
    for (const auto& c : components(g, removed)) largest = std::max(largest, c.size());
    best = std::min(best, __builtin_popcount(mask) + static_cast<int>(largest));
  }
  return best;
}

Graph two_triangles() {
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  g.add_edge(2, 4);
  return g;
}

}  // namespace

TEST_CASE("vi separator search") {
  auto star = vi::compute_separator(star_graph(4), 2);
  REQUIRE(star);
  CHECK(star->separator == std::vector<int>{0});
  CHECK_FALSE(vi::compute_separator(path_graph(4), 2));
  auto p4 = vi::compute_separator(path_graph(4), 3);
  REQUIRE(p4);
  CHECK(p4->p <= 3);
  auto k4 = vi::compute_separator(complete_graph(4), 4);
  REQUIRE(k4);
  CHECK(k4->separator.empty());

  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 60; ++rep) {
    Graph g = random_graph(1 + rng() % 9, rep % 2 ? 0.25 : 0.5, rng);
    auto d = vi::decompose(g);
    CHECK(d.p == naive_vi(g));
    std::size_t covered = d.separator.size();
    for (const auto& c : d.components) covered += c.size();
    CHECK(covered == static_cast<std::size_t>(g.size()));
  }
}

TEST_CASE("vi guesses") {
  Graph one(1);
  std::vector<int> u{0};
  auto g1 = vi::enumerate_guesses(one, u, 1);
  REQUIRE(g1.size() == 2);
  CHECK(g1[0].deleted.empty());
  CHECK(g1[0].blocks == std::vector<std::vector<int>>{{0}});
  CHECK(g1[1].deleted == std::vector<int>{0});
  CHECK(g1[1].blocks.empty());

  std::vector<int> ab{0, 1};
  Graph apart(2);
  auto g2 = vi::enumerate_guesses(apart, ab, 0);
  REQUIRE(g2.size() == 2);
  CHECK(g2[0].blocks == std::vector<std::vector<int>>{{0, 1}});
  CHECK(g2[1].blocks == std::vector<std::vector<int>>{{0}, {1}});

  Graph joined = path_graph(2);
  auto g3 = vi::enumerate_guesses(joined, ab, 0);
  REQUIRE(g3.size() == 1);
  CHECK(g3[0].blocks == std::vector<std::vector<int>>{{0, 1}});
}

TEST_CASE("vi component menus") {
  SUBCASE("single vertex next to one block") {
    Graph g = path_graph(2);  // 0 in U, 1 the component
    vi::Guess guess{{}, {{0}}};
    std::vector<int> comp{1};
    auto menu = vi::component_menu(g, comp, guess);
    REQUIRE(menu.size() == 2);
    CHECK(menu[0].attached == std::vector<Count>{1});
    CHECK(menu[0].internal == 0);
    CHECK(menu[1].attached == std::vector<Count>{0});
    CHECK(menu[1].cost == 1);
  }
  SUBCASE("isolated edge") {
    Graph g = path_graph(2);
    vi::Guess guess;
    std::vector<int> comp{0, 1};
    auto menu = vi::component_menu(g, comp, guess);
    CHECK(menu[0].subset.empty());
    CHECK(menu[0].internal == 1);
  }
  SUBCASE("vertex bridging two blocks") {
    Graph g = path_graph(3);  // 1 is the component between blocks {0} and {2}
    vi::Guess guess{{}, {{0}, {2}}};
    std::vector<int> comp{1};
    auto menu = vi::component_menu(g, comp, guess);
    REQUIRE(menu.size() == 1);
    CHECK(menu[0].subset == std::vector<int>{1});
  }
  SUBCASE("constants match direct simulation") {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 40; ++rep) {
      Graph g = random_graph(9, 0.35, rng);
      auto dec = vi::decompose(g);
      auto guesses = vi::enumerate_guesses(g, dec.separator, 2);
      const auto& guess = guesses[rng() % guesses.size()];
      for (const auto& comp : dec.components) {
        for (const auto& e : vi::component_menu(g, comp, guess)) {
          // Simulate: keep the blocks and C \ S^j_q only.
          std::vector<char> removed(g.size(), 1);
          for (const auto& b : guess.blocks)
            for (int v : b) removed[v] = 0;
          for (int v : comp) removed[v] = 0;
          for (int v : e.subset) removed[v] = 1;
          std::vector<Count> attached(guess.blocks.size(), 0);
          Count internal = 0;
          for (const auto& piece : components(g, removed)) {
            std::vector<int> hit;
            Count size = 0;
            for (int v : piece) {
              bool in_block = false;
              for (std::size_t b = 0; b < guess.blocks.size(); ++b)
                if (std::count(guess.blocks[b].begin(), guess.blocks[b].end(), v)) {
                  in_block = true;
                  if (std::find(hit.begin(), hit.end(), static_cast<int>(b)) == hit.end())
                    hit.push_back(static_cast<int>(b));
                }
              if (!in_block && std::count(comp.begin(), comp.end(), v)) ++size;
            }
            if (size == 0) continue;
            CHECK(hit.size() <= 1);
            if (hit.size() == 1) attached[hit[0]] += size;
            else internal += choose2(size);
          }
          CHECK(attached == e.attached);
          CHECK(internal == e.internal);
          CHECK(e.cost == static_cast<int>(e.subset.size()));
        }
      }
    }
  }
}

TEST_CASE("vi assignment optimization") {
  std::vector<std::vector<vi::MenuEntry>> none;
  std::vector<Count> two{2};
  CHECK(vi::optimize_assignment(none, two, 0).value == Cost(1));

  std::vector<std::vector<vi::MenuEntry>> menus{{{{}, {1}, 0, 0}, {{7}, {0}, 0, 1}}};
  std::vector<Count> one{1};
  CHECK(vi::optimize_assignment(menus, one, 0).value == Cost(1));
  auto a = vi::optimize_assignment(menus, one, 1);
  CHECK(a.value == Cost(0));
  CHECK(a.choice == std::vector<int>{1});

  SUBCASE("matches exhaustive menu combinations") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 200; ++rep) {
      const int m = 1 + rng() % 4;
      const int l = rng() % 3;
      std::vector<Count> sizes(l);
      for (auto& s : sizes) s = rng() % 4;
      std::vector<std::vector<vi::MenuEntry>> ms(m);
      for (auto& menu : ms) {
        const int q = 1 + rng() % 8;
        for (int i = 0; i < q; ++i) {
          vi::MenuEntry e;
          e.attached.resize(l);
          for (auto& c : e.attached) c = rng() % 4;
          e.internal = rng() % 6;
          e.cost = rng() % 3;
          menu.push_back(e);
        }
      }
      const int budget = rng() % 6;
      Cost brute = Cost::infinity();
      std::vector<int> pick(m, 0);
      while (true) {
        int cost = 0;
        Count value = 0;
        std::vector<Count> y = sizes;
        for (int j = 0; j < m; ++j) {
          const auto& e = ms[j][pick[j]];
          cost += e.cost;
          value += e.internal;
          for (int i = 0; i < l; ++i) y[i] += e.attached[i];
        }
        for (Count v : y) value += choose2(v);
        if (cost == budget) brute = std::min(brute, Cost(value));
        int j = 0;
        while (j < m && ++pick[j] == static_cast<int>(ms[j].size())) pick[j++] = 0;
        if (j == m) break;
      }
      auto got = vi::optimize_assignment(ms, sizes, budget);
      CHECK(got.value == brute);
    }
  }
}

TEST_CASE("vi surrogate never undercounts") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 40; ++rep) {
    Graph g = random_graph(9, 0.3, rng);
    auto dec = vi::decompose(g);
    for (const auto& guess : vi::enumerate_guesses(g, dec.separator, 2)) {
      std::vector<std::vector<vi::MenuEntry>> menus;
      for (const auto& comp : dec.components) menus.push_back(vi::component_menu(g, comp, guess));
      std::vector<Count> sizes;
      for (const auto& b : guess.blocks) sizes.push_back(b.size());
      for (int budget = 0; budget <= 2; ++budget) {
        auto a = vi::optimize_assignment(menus, sizes, budget);
        if (a.value.is_infinite()) continue;
        std::vector<int> s = guess.deleted;
        for (std::size_t j = 0; j < menus.size(); ++j)
          s.insert(s.end(), menus[j][a.choice[j]].subset.begin(), menus[j][a.choice[j]].subset.end());
        CHECK(Cost(naive_pairs(g, s)) <= a.value);
      }
    }
  }
}

TEST_CASE("vi solver") {
  CHECK(vi::solve({star_graph(4), 1, 0}).pairs == 0);
  CHECK(vi::solve({two_triangles(), 1, 0}).pairs == 2);
  CHECK(vi::solve({path_graph(6), 1, 0}).pairs == 4);

  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + rng() % 10;
    Instance inst{random_graph(n, rep % 2 ? 0.2 : 0.5, rng), static_cast<int>(rng() % (n + 1)), 0};
    auto sol = vi::solve(inst);
    verify_solution(inst, sol);
    CHECK(sol.pairs == solve_bruteforce(inst).opt);
  }

  vi::Options tight;
  tight.max_separator = 1;
  tight.max_component = 1;
  CHECK_THROWS_AS(vi::solve({complete_graph(5), 1, 0}, tight), CapExceeded);
  Graph heavy(2);
  heavy.set_weight(0, 3);
  CHECK_THROWS_AS(vi::solve({heavy, 1, 0}), InputError);
}
