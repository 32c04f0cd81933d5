#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cnc/budget.hpp"
#include "cnc/graph.hpp"

namespace cnc::vi {

struct ViDecomposition {
  std::vector<int> separator;                  // U, sorted
  std::vector<std::vector<int>> components;    // components of G - U
  int p = 0;                                   // |U| + largest component
};

/// A separator U with |U| + max component <= p, or nullopt if none exists.
/// Branches on a connected set of p - |U| + 1 vertices inside an oversized
/// component; one of them must join U.
std::optional<ViDecomposition> compute_separator(const Graph& g, int p);

struct Options {
  int max_separator = 12;
  int max_component = 12;
};

/// Smallest p admitting a separator, trying p = 1, 2, ... Throws
/// CapExceeded when the caps are hit first.
ViDecomposition decompose(const Graph& g, const Options& options = {});

struct Guess {
  std::vector<int> deleted;               // S, a subset of U
  std::vector<std::vector<int>> blocks;   // partition of U \ S
};

/// All guesses with |S| <= budget whose blocks are unions of components of
/// G[U \ S]. Order: S by increasing bitmask over U, then partitions in
/// restricted-growth order.
std::vector<Guess> enumerate_guesses(const Graph& g, std::span<const int> separator, int budget);

struct MenuEntry {
  std::vector<int> subset;        // S^j_q
  std::vector<Count> attached;    // c^{j,q}_i per block
  Count internal = 0;             // p^{j,q}
  int cost = 0;                   // d^j_q
};

/// Every valid subset of the component with its constants, in increasing
/// bitmask order over the component's vertex list.
std::vector<MenuEntry> component_menu(const Graph& g, std::span<const int> component, const Guess& guess);

struct Assignment {
  Cost value = Cost::infinity();
  std::vector<int> choice;  // menu index per component
};

/// Minimizes sum p + sum_i C(n_i + y_i, 2) over one menu entry per component
/// with total cost exactly budget.
Assignment optimize_assignment(const std::vector<std::vector<MenuEntry>>& menus,
                               std::span<const Count> block_sizes, int budget);

Solution solve(const Instance& inst, const Options& options = {});

}  // namespace cnc::vi
