#pragma once

#include <vector>

#include "cnc/budget.hpp"
#include "cnc/graph.hpp"

namespace cnc::maxleaf {

/// Vertices of degree at least 3.
std::vector<int> high_degree_vertices(const Graph& g);

enum class ShapeKind { path, cycle, tree };

// One connected component after the guessed high-degree deletions, with
// every cycle through an undeletable vertex contracted.
struct ComponentShape {
  ShapeKind kind = ShapeKind::tree;
  // path: vertices in path order; cycle: vertices in cycle order; tree:
  // the contracted tree (weights and deletable flags set).
  Graph tree;
  // members[t] = vertices of the input graph merged into tree vertex t.
  std::vector<std::vector<int>> members;
};

/// Splits g into components and contracts every 2-edge-connected block of
/// size > 1 inside components that contain an undeletable vertex. Such a
/// block becomes one undeletable vertex carrying the summed weight. Throws
/// std::logic_error if a cycle without undeletable vertices sits inside a
/// component that is not itself a cycle.
std::vector<ComponentShape> contract_safe_cycles(const Graph& g);

// Exact-deletion budget function of a weighted tree: f(j) is the minimum
// pair count after deleting exactly j deletable vertices.
class TreeDP {
 public:
  TreeDP(const Graph& tree, int k);

  const BudgetFunction& function() const { return f_; }
  /// Tree vertices deleted by one optimal choice for budget j.
  std::vector<int> witness(int j) const;

 private:
  struct Node {
    std::vector<int> children;
    // keep_steps[t] = keep table after merging the first t children;
    // keep table is [b][s], s = expanded size of the open component.
    std::vector<std::vector<std::vector<Cost>>> keep_steps;
    std::vector<std::vector<Cost>> del_steps;  // [t][b]
    std::vector<Cost> closed;                  // [b]
  };

  void solve(int v);
  void trace_keep(int v, int b, int s, std::vector<int>& out) const;
  void trace_del(int v, int b, std::vector<int>& out) const;
  void trace_closed(int v, int b, std::vector<int>& out) const;

  Graph tree_;
  int k_;
  std::vector<Node> nodes_;
  std::vector<int> roots_;
  BudgetFunction f_;
};

BudgetFunction tree_budget_function(const Graph& tree, int k);

/// Closed form for an all-deletable unit-weight path or cycle on len
/// vertices.
BudgetFunction path_budget_function(int len, int k);
BudgetFunction cycle_budget_function(int len, int k);
/// Positions (0..len-1 along the path/cycle) deleted by an optimal choice.
std::vector<int> path_witness(int len, int j);
std::vector<int> cycle_witness(int len, int j);

struct Options {
  int max_high_degree = 25;
};

Solution solve(const Instance& inst, const Options& options = {});

}  // namespace cnc::maxleaf
