#pragma once

#include <iosfwd>
#include <vector>

#include "cnc/budget.hpp"
#include "cnc/graph.hpp"

namespace cnc::mw {

enum class NodeKind { leaf, parallel, series, prime };

struct MDNode {
  NodeKind kind = NodeKind::leaf;
  std::vector<int> vertices;     // V_b, sorted
  std::vector<MDNode> children;  // ordered by smallest vertex
  Graph quotient;                // H_b on the children
};

/// Modular decomposition by recursive parallel/series splits; prime nodes
/// take the maximal strong modules as children.
MDNode modular_decomposition(const Graph& g);

/// Largest number of children of any node.
int width(const MDNode& root);

/// Rebuilds the graph on n vertices from the quotient rule.
Graph reconstruct(const MDNode& root, int n);

/// Indented debug listing, one node per line.
void print_tree(std::ostream& out, const MDNode& root);

const char* kind_name(NodeKind kind);

struct Options {
  int max_width = 20;
};

struct NodeTable {
  BudgetFunction f;
  // Per budget: the subset S of children (bitmask) attaining f, or -1.
  std::vector<long> choice;
};

/// f_b over budgets [0..k] from the children's tables.
NodeTable node_function(const MDNode& b, const std::vector<NodeTable>& children, int k);

Solution solve(const Instance& inst, const Options& options = {});

}  // namespace cnc::mw
