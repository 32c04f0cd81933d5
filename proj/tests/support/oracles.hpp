#pragma once

// Test-only oracles. Everything here is written independently of the
// library's solver code paths so it can be used to check them.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "cnc/budget.hpp"
#include "cnc/graph.hpp"

namespace cnc::testing {

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

inline Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  g.add_edge(0, n - 1);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph star_graph(int leaves) {
  Graph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

// Pair count by flood fill over an adjacency matrix built from scratch;
// weights are expanded explicitly.
inline Count naive_pairs(const Graph& g, const std::vector<int>& removed = {}) {
  const int n = g.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
  std::vector<char> gone(n, 0), seen(n, 0);
  for (int v : removed) gone[v] = 1;
  Count total = 0;
  for (int s = 0; s < n; ++s) {
    if (gone[s] || seen[s]) continue;
    std::vector<int> queue{s};
    seen[s] = 1;
    Count size = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int u = queue[i];
      size += g.weight(u);
      for (int v = 0; v < n; ++v)
        if (adj[u][v] && !gone[v] && !seen[v]) {
          seen[v] = 1;
          queue.push_back(v);
        }
    }
    total += size * (size - 1) / 2;
  }
  return total;
}

// Minimum of pairs(G - S) over all S with |S| <= k, by bitmask enumeration.
inline Count naive_opt(const Graph& g, int k) {
  const int n = g.size();
  Count best = std::numeric_limits<Count>::max();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) > k) continue;
    std::vector<int> s;
    bool ok = true;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) {
        s.push_back(v);
        ok &= g.deletable(v);
      }
    if (ok) best = std::min(best, naive_pairs(g, s));
  }
  return best;
}

// Exhaustive enumeration of every composition of b into fs.size() parts.
inline Cost enumerate_splits(const std::vector<BudgetFunction>& fs, int b) {
  if (fs.empty()) return Cost(0);
  Cost best = Cost::infinity();
  std::vector<int> parts(fs.size(), 0);
  while (true) {
    int sum = 0;
    for (int p : parts) sum += p;
    if (sum == b) {
      Cost total(0);
      for (std::size_t i = 0; i < fs.size(); ++i)
        total = total + (parts[i] <= fs[i].max_budget() ? fs[i](parts[i]) : Cost::infinity());
      best = std::min(best, total);
    }
    std::size_t i = 0;
    while (i < parts.size() && parts[i] == b) parts[i++] = 0;
    if (i == parts.size()) break;
    ++parts[i];
  }
  return best;
}

}  // namespace cnc::testing
