#pragma once

#include <vector>

#include "cnc/graph.hpp"

namespace cnc {

struct BruteForceOptions {
  // Maximum number of candidate deletion sets examined.
  std::uint64_t cap = 100'000'000;
  // Enumerate every size up to k even after a zero-pair set was found, so
  // that per-size counts are complete.
  bool full_counts = false;
};

struct SizeOptimum {
  Count min_pairs = 0;
  BigCount count = 0;        // sets of exactly this size achieving min_pairs
  std::vector<int> witness;  // first minimizer in lexicographic order
};

struct BruteForceResult {
  Count opt = 0;
  Solution witness;
  // per_size[j] for every enumerated size j (all of [0..k] unless the
  // early exit on opt == 0 stopped the enumeration).
  std::vector<SizeOptimum> per_size;
};

/// Exhaustive oracle over all deletion sets of size at most k that avoid
/// non-deletable vertices. Throws CapExceeded when the candidate count
/// exceeds options.cap.
BruteForceResult solve_bruteforce(const Instance& inst, const BruteForceOptions& options = {});

}  // namespace cnc
