#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cnc/graph.hpp"

namespace cnc {

// Vertex role in a reduced graph, e.g. {"sigma", {i, j, q}} with 1-based
// bins or classes.
struct Role {
  std::string kind;
  std::vector<int> index;
};

// ---------------------------------------------------------------------------
// Bin packing with items restricted to a pair of bins.

struct RubpInstance {
  int k = 0;
  std::vector<Count> values;
  std::vector<std::pair<int, int>> bins;  // 0-based, first < second
};

// File format:
//   c <comment>
//   r <k>
//   a <value> <bin1> <bin2>   (bins 1-based, distinct)
RubpInstance read_rubp(std::istream& in);
RubpInstance read_rubp(const std::string& path);
void write_rubp(std::ostream& out, const RubpInstance& r);

struct RubpBruteResult {
  bool yes = false;
  std::vector<int> assignment;  // bin per item, 0-based; empty when no
};

/// Backtracking over the 2^|A| admissible assignments with sum pruning.
/// Throws CapExceeded when 2^|A| > cap.
RubpBruteResult rubp_brute(const RubpInstance& r, std::uint64_t cap = 10'000'000);

struct RubpConstants {
  Count B = 0, c = 0, M = 0, L = 0, T = 0;
  int k_prime = 0;
  Count x = 0;
  Count expanded_vertices = 0;  // k*T + 2*C(k,2)*M
};

RubpConstants rubp_constants(const RubpInstance& r);

struct RubpPair {
  int i = 0, j = 0;            // 0-based bins, i < j
  Count load = 0;              // sum of items restricted to {i, j}
  std::vector<Count> sums;     // distinct subset sums, sorted
  std::vector<int> u;          // path vertices v_0 .. v_{4B-|sums|+1}
  std::vector<int> s;          // s_1 .. s_load
  std::vector<int> sigma;      // sigma_q for q in sums, same order
};

struct RubpReduction {
  RubpInstance source;
  RubpConstants constants;
  Graph weighted;                          // before expanding weights
  std::vector<std::vector<int>> cliques;   // per bin
  std::vector<RubpPair> pairs;             // lexicographic (i, j)
  std::vector<Role> roles;                 // per weighted vertex
  Instance instance;                       // expanded graph, k', x
  std::vector<int> origin;                 // expanded vertex -> weighted vertex
};

/// Throws InputError when sum(A) is not a positive multiple of k, when k < 2,
/// or when a pair of bins carries more than 2B; CapExceeded when the
/// expanded graph would exceed max_vertices.
RubpReduction reduce_rubp(const RubpInstance& r, Count max_vertices = 1'000'000);

/// Deletion set built from a valid assignment. Pairs are recomputed on the
/// expanded graph; throws std::logic_error if they exceed x, InputError if
/// the assignment is invalid.
Solution rubp_witness(const RubpReduction& red, const std::vector<int>& assignment);

/// Minimum pairs over deletion sets taking one vertex from every U path and
/// one sigma vertex from every D path. A structure-assisted check for
/// no-instances, not an exhaustive search.
Count rubp_restricted_min(const RubpReduction& red, std::uint64_t cap = 100'000);

struct RubpParamReport {
  std::int64_t fes = 0;
  Count fes_bound = 0;        // k*C(c,2) + 4*C(k,2)*c
  int clique_degree_min = 0;
  int clique_degree_max = 0;
  int clique_degree_expected = 0;  // c + 2(k-1)
  std::int64_t remainder_fes = 0;  // after removing the clique edges F
  bool caterpillar = false;        // weighted remainder, before expansion

  bool ok() const {
    return fes >= 0 && static_cast<Count>(fes) <= fes_bound && clique_degree_min == clique_degree_expected &&
           clique_degree_max == clique_degree_expected && remainder_fes == 0 && caterpillar;
  }
};

RubpParamReport check_rubp_param_bounds(const RubpReduction& red);

// ---------------------------------------------------------------------------
// Multicolored clique.

struct McEdge {
  int class_a = 0, index_a = 0;
  int class_b = 0, index_b = 0;  // class_a < class_b, all 0-based
  friend bool operator==(const McEdge&, const McEdge&) = default;
};

struct McInstance {
  int k = 0;
  int n = 0;
  std::vector<McEdge> edges;
};

// File format:
//   c <comment>
//   m <k> <n>
//   e <class1> <idx1> <class2> <idx2>   (1-based, distinct classes)
McInstance read_mc(std::istream& in);
McInstance read_mc(const std::string& path);
void write_mc(std::ostream& out, const McInstance& m);

struct McBruteResult {
  bool yes = false;
  std::vector<int> clique;  // chosen index per class
};

/// Enumerates all n^k choices. Throws CapExceeded when n^k > cap.
McBruteResult mc_brute(const McInstance& m, std::uint64_t cap = 10'000'000);

struct McReduction {
  McInstance source;
  int log_n = 0;
  Count A = 0;  // dummy group size |E| + 1
  std::vector<int> core;       // g^{i,w}_z at core[(i * log_n + w) * 2 + z]
  std::vector<int> clique;     // C
  std::vector<int> adjacency;  // h_e per edge
  int dummy_groups = 0;
  std::vector<Role> roles;
  Instance instance;           // graph, k' = k log n, x
};

/// Throws InputError unless n is a power of two with n >= 2.
McReduction reduce_mc(const McInstance& m);

/// Deletion set from a multicolored clique (one index per class). Throws
/// InputError if it is not a clique, std::logic_error if pairs exceed x.
Solution mc_witness(const McReduction& red, const std::vector<int>& clique);

}  // namespace cnc
