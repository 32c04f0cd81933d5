#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cnc/graph.hpp"

namespace cnc::cw {

enum class Op { intro, join_union, join, rename };

struct ExprNode {
  Op op = Op::intro;
  int a = 0;  // intro: label; join: i; rename: from
  int b = 0;  // join: j; rename: to
  std::vector<int> kids;
  int vertex = -1;  // intro only, in order of appearance
};

// Nodes are stored children-first; the last node is the root.
struct Expression {
  std::vector<ExprNode> nodes;
  int vertices = 0;
  int width = 0;  // number of distinct labels used

  int root() const { return static_cast<int>(nodes.size()) - 1; }
};

/// Parses `v(i)`, `u(e,f)`, `j(i,j,e)`, `r(i,j,e)` with whitespace ignored.
/// Throws InputError on syntax errors, labels outside [1..32], i == j, and
/// joins that would re-add an existing edge.
Expression parse_expression(std::string_view text);
std::string to_string(const Expression& e);

struct LabeledGraph {
  Graph graph;
  std::vector<int> label;  // per vertex
};

LabeledGraph evaluate(const Expression& e);

// (alpha, beta) over label sets encoded as bitmasks of dense label indices
// 0..w-1: entries [0, 2^w) hold alpha, entries [2^w, 2^(w+1)) hold beta.
// Entry 0 of each half (the empty set) stays zero.
using Signature = std::vector<std::uint32_t>;

Signature signature_union(const Signature& a, const Signature& b);
Signature signature_rename(const Signature& s, int from, int to);
/// Identity when no i-vertex or no j-vertex survives; otherwise every class
/// meeting {i, j} merges into one component.
Signature signature_join(const Signature& s, int i, int j);

struct Options {
  int max_width = 4;
  int max_vertices = 14;
  // Check that the counts of every table level k sum to C(|V(H)|, k).
  bool check_tables = true;
};

struct SizeResult {
  Count min_pairs = 0;
  BigCount count = 0;        // sets of size exactly k attaining min_pairs
  std::vector<int> witness;  // sorted, 0-based
};

struct CountResult {
  std::vector<SizeResult> per_size;  // k = 0..n
  std::size_t levels_checked = 0;    // (node, k) table levels verified
  std::size_t signatures = 0;        // largest table size seen
};

CountResult count_solutions(const Expression& e, const Options& options = {});

/// Best set of size at most k for the expression's graph.
Solution solve(const Expression& e, int k, const Options& options = {});

}  // namespace cnc::cw
