#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cnc {

using Count = std::uint64_t;
using BigCount = boost::multiprecision::cpp_int;

/// C(n, 2) without overflow for every n that fits a pair count.
constexpr Count choose2(Count n) { return n < 2 ? 0 : (n % 2 == 0 ? (n / 2) * (n - 1) : n * ((n - 1) / 2)); }

BigCount binomial(unsigned n, unsigned k);

// Simple undirected graph on vertices 0..n-1. Every vertex carries a weight
// (a weight-w vertex stands for itself plus a pendant path of w-1 unit
// vertices) and a deletable flag used internally by some solvers.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);

  int size() const { return static_cast<int>(adj_.size()); }
  std::size_t edge_count() const { return edges_; }

  int add_vertex(Count weight = 1);
  // Throws InputError on loops, duplicates and out-of-range endpoints.
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;

  std::span<const int> neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  Count weight(int v) const { return weight_[v]; }
  void set_weight(int v, Count w);
  bool deletable(int v) const { return deletable_[v] != 0; }
  void set_deletable(int v, bool d) { deletable_[v] = d ? 1 : 0; }

  Count total_weight() const;
  bool unit_weights() const;
  std::vector<std::pair<int, int>> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(int v) const;

  std::vector<std::vector<int>> adj_;
  std::vector<Count> weight_;
  std::vector<char> deletable_;
  std::size_t edges_ = 0;
};

struct Instance {
  Graph graph;
  int k = 0;
  Count x = 0;
};

struct Solution {
  std::vector<int> deleted;  // sorted, 0-based
  Count pairs = 0;
  bool optimal = false;
};

struct ParameterReport {
  std::int64_t fes = 0;
  int max_degree = 0;
  int components = 0;
  Count expanded_n = 0;
};

/// Result of taking an induced subgraph: new graph plus index maps.
struct InducedGraph {
  Graph graph;
  std::vector<int> old_to_new;  // -1 for removed vertices
  std::vector<int> new_to_old;
};

struct ExpandedGraph {
  Graph graph;
  // origin[v] = vertex of the weighted graph that v belongs to. Original
  // vertices keep their indices; tail vertices are appended.
  std::vector<int> origin;
};

/// Connected components as sorted vertex lists, ordered by smallest member.
std::vector<std::vector<int>> components(const Graph& g);
std::vector<std::vector<int>> components(const Graph& g, std::span<const char> removed);

Count pairs(const Graph& g);
/// pairs(G - S) without materializing the subgraph.
Count pairs_without(const Graph& g, std::span<const int> removed);

ExpandedGraph expand_weights(const Graph& g);
/// Induced subgraph on V \ s. Throws std::invalid_argument if s contains a
/// non-deletable vertex.
InducedGraph delete_vertices(const Graph& g, std::span<const int> s);
InducedGraph induced_subgraph(const Graph& g, std::span<const int> keep);

ParameterReport parameter_report(const Graph& g);

/// Recomputes pairs(G - deleted) and throws std::logic_error when it
/// disagrees with sol.pairs or the budget is violated.
void verify_solution(const Instance& inst, const Solution& sol);

}  // namespace cnc
