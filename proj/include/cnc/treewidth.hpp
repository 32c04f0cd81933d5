#pragma once

#include <optional>
#include <vector>

#include "cnc/graph.hpp"
#include "cnc/tree_decomposition.hpp"

namespace cnc::tw {

// Rounded component sizes. Index 0 always means size 0. An exact grid holds
// every integer 0..n; a geometric grid holds 0 and the powers (1+delta)^j up
// to the first one at or above its upper bound.
class SizeGrid {
 public:
  static SizeGrid exact(int n);
  static SizeGrid geometric(double delta, double upper);

  bool is_exact() const { return exact_; }
  double delta() const { return delta_; }
  std::size_t size() const { return values_.size(); }
  double value(int index) const { return values_.at(index); }
  double max_value() const { return values_.back(); }

  /// Index of the least grid value >= x. Values within a relative 1e-9 of x
  /// count as equal so that grid points map to themselves. Throws
  /// std::out_of_range above the grid.
  int round_up(double x) const;

 private:
  bool exact_ = true;
  double delta_ = 0;
  std::vector<double> values_;
};

// Set partitions as block labels per element; -1 marks an element outside
// the ground set. Results are canonical: blocks numbered by first element.
using Partition = std::vector<int>;

Partition canonical(const Partition& p);
/// Finest common coarsening. Both sides must exclude the same elements.
Partition partition_join(const Partition& a, const Partition& b);
Partition restrict_to(const Partition& p, const std::vector<char>& keep);
/// Inserts a new singleton block at position pos.
Partition extend(const Partition& p, int pos);
/// True when every block of a lies inside a block of b.
bool refines(const Partition& a, const Partition& b);

enum class Mode { exact, apx };

struct Options {
  Mode mode = Mode::exact;
  double eps = 0.5;
  // Apx machinery with the exact integer grid in place of the geometric one.
  bool exact_grid = false;
  std::optional<TreeDecomposition> td;  // min-fill heuristic when absent
  int max_width_exact = 8;
  int max_width_apx = 12;
};

struct Result {
  Solution solution;       // pairs recomputed from the witness
  double estimate = 0;     // rounded objective of the chosen table entry
  int width = 0;
  int height = 0;
  double delta = 0;        // 0 for the exact grid
  std::size_t grid_size = 0;
  std::size_t max_states = 0;
};

/// Requires unit weights. Exact mode is optimal; apx mode returns |S| <= k
/// with pairs within a factor 1+eps of the optimum.
Result solve(const Instance& inst, const Options& options = {});

/// epsilon' used by the apx grid: min(eps, 0.99) / 4.
double eps_prime(double eps);

}  // namespace cnc::tw
