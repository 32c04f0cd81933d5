#include "cnc/bruteforce.hpp"

#include <limits>

#include "cnc/errors.hpp"

namespace cnc {

namespace {

// Iterative pairs count over a removal mask; avoids allocation per candidate.
class PairCounter {
 public:
  explicit PairCounter(const Graph& g) : g_(g), seen_(g.size(), 0), stack_(g.size()) {}

  Count count(const std::vector<char>& removed) {
    ++epoch_;
    Count total = 0;
    for (int s = 0; s < g_.size(); ++s) {
      if (removed[s] || seen_[s] == epoch_) continue;
      seen_[s] = epoch_;
      int top = 0;
      stack_[top++] = s;
      Count mass = 0;
      while (top > 0) {
        int u = stack_[--top];
        mass += g_.weight(u);
        for (int v : g_.neighbors(u)) {
          if (removed[v] || seen_[v] == epoch_) continue;
          seen_[v] = epoch_;
          stack_[top++] = v;
        }
      }
      total += choose2(mass);
    }
    return total;
  }

 private:
  const Graph& g_;
  std::vector<unsigned> seen_;
  std::vector<int> stack_;
  unsigned epoch_ = 0;
};

}  // namespace

BruteForceResult solve_bruteforce(const Instance& inst, const BruteForceOptions& options) {
  const Graph& g = inst.graph;
  std::vector<int> pool;
  for (int v = 0; v < g.size(); ++v)
    if (g.deletable(v)) pool.push_back(v);
  const int p = static_cast<int>(pool.size());
  const int kmax = std::min(inst.k, p);

  BigCount candidates = 0;
  for (int j = 0; j <= kmax; ++j) candidates += binomial(p, j);
  if (candidates > options.cap) throw CapExceeded("brute force would enumerate " + candidates.str() + " sets", options.cap);

  BruteForceResult result;
  result.opt = std::numeric_limits<Count>::max();
  PairCounter counter(g);
  std::vector<char> removed(g.size(), 0);
  std::vector<int> idx;

  for (int j = 0; j <= kmax; ++j) {
    SizeOptimum best;
    best.min_pairs = std::numeric_limits<Count>::max();
    idx.resize(j);
    for (int i = 0; i < j; ++i) idx[i] = i;
    while (true) {
      for (int i : idx) removed[pool[i]] = 1;
      const Count value = counter.count(removed);
      for (int i : idx) removed[pool[i]] = 0;
      if (value < best.min_pairs) {
        best.min_pairs = value;
        best.count = 1;
        best.witness.clear();
        for (int i : idx) best.witness.push_back(pool[i]);
      } else if (value == best.min_pairs) {
        best.count += 1;
      }
      // next combination in lexicographic order
      int pos = j - 1;
      while (pos >= 0 && idx[pos] == p - j + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < j; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (best.min_pairs < result.opt) {
      result.opt = best.min_pairs;
      result.witness.deleted = best.witness;
    }
    result.per_size.push_back(std::move(best));
    if (result.opt == 0 && !options.full_counts) break;
  }
  result.witness.pairs = result.opt;
  result.witness.optimal = true;
  return result;
}

}  // namespace cnc
