#pragma once

// Small source instances for the reductions.

#include <utility>
#include <vector>

#include "cnc/reductions.hpp"

namespace cnc::testing {

inline RubpInstance two_bins(std::vector<Count> values) {
  RubpInstance r;
  r.k = 2;
  r.values = std::move(values);
  r.bins.assign(r.values.size(), {0, 1});
  return r;
}

// All multisets of 1..4 values from {1, 2} with an even sum.
inline std::vector<RubpInstance> small_two_bin_instances() {
  std::vector<RubpInstance> out;
  for (int size = 1; size <= 4; ++size)
    for (int twos = 0; twos <= size; ++twos) {
      std::vector<Count> values(size - twos, 1);
      values.insert(values.end(), twos, 2);
      if ((size - twos) % 2 == 0) out.push_back(two_bins(values));
    }
  return out;
}

// k = 2, n = 2; bit (a << 1 | b) of mask adds the edge between index a of
// the first class and index b of the second.
inline McInstance mc_from_mask(int mask) {
  McInstance m;
  m.k = 2;
  m.n = 2;
  for (int bit = 0; bit < 4; ++bit)
    if (mask >> bit & 1) m.edges.push_back({0, bit >> 1, 1, bit & 1});
  return m;
}

}  // namespace cnc::testing
