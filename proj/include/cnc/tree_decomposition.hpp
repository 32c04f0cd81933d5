#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cnc/graph.hpp"

namespace cnc {

struct TreeDecomposition {
  std::vector<std::vector<int>> bags;          // sorted, 0-based vertices
  std::vector<std::pair<int, int>> edges;      // tree edges between bag indices

  int width() const;
};

/// PACE .td format. Throws InputError on syntax errors; the decomposition
/// is not checked against any graph here.
TreeDecomposition read_td(std::istream& in);
TreeDecomposition read_td(const std::string& path);
void write_td(std::ostream& out, const TreeDecomposition& td, int n);

/// Throws InputError naming the first violated axiom (tree shape, vertex
/// cover, edge cover, connected occurrences).
void validate(const TreeDecomposition& td, const Graph& g);

/// Min-fill elimination ordering; ties go to smaller degree, then index.
TreeDecomposition heuristic_td(const Graph& g);

enum class NiceKind { leaf, introduce, forget, join };

struct NiceNode {
  NiceKind kind = NiceKind::leaf;
  int vertex = -1;              // introduced or forgotten vertex
  std::vector<int> children;
  std::vector<int> bag;         // sorted
  int height = 0;               // distance to the deepest leaf below
};

// Nodes are stored children-first; the last node is the root.
struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;

  int root() const { return static_cast<int>(nodes.size()) - 1; }
  int width() const;
  int height() const { return nodes.empty() ? 0 : nodes.back().height; }
};

NiceTreeDecomposition nicify(const TreeDecomposition& td);

/// Structural checks: empty leaves and root, one vertex per
/// introduce/forget, equal bags at joins, heights consistent.
void check_nice(const NiceTreeDecomposition& nice);

}  // namespace cnc
