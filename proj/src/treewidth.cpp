#include "cnc/treewidth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "cnc/errors.hpp"

namespace cnc::tw {

SizeGrid SizeGrid::exact(int n) {
  SizeGrid g;
  g.values_.resize(std::max(n, 1) + 1);
  std::iota(g.values_.begin(), g.values_.end(), 0.0);
  return g;
}

SizeGrid SizeGrid::geometric(double delta, double upper) {
  if (!(delta > 0)) throw std::invalid_argument("grid delta must be positive");
  SizeGrid g;
  g.exact_ = false;
  g.delta_ = delta;
  g.values_ = {0.0, 1.0};
  for (int j = 1; g.values_.back() < upper; ++j) g.values_.push_back(std::pow(1.0 + delta, j));
  return g;
}

int SizeGrid::round_up(double x) const {
  if (x <= 0) return 0;
  const double target = x - 1e-9 * x;
  auto it = std::lower_bound(values_.begin(), values_.end(), target);
  if (it == values_.end()) throw std::out_of_range("size " + std::to_string(x) + " above the grid");
  return static_cast<int>(it - values_.begin());
}

double eps_prime(double eps) { return std::min(eps, 0.99) / 4; }

Partition canonical(const Partition& p) {
  std::map<int, int> relabel;
  Partition out(p.size(), -1);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0) continue;
    auto [it, fresh] = relabel.emplace(p[i], static_cast<int>(relabel.size()));
    out[i] = it->second;
  }
  return out;
}

Partition partition_join(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) throw std::invalid_argument("partitions over different ground sets");
  const int n = static_cast<int>(a.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Partition* p : {&a, &b}) {
    std::map<int, int> first;
    for (int i = 0; i < n; ++i) {
      if ((a[i] < 0) != (b[i] < 0)) throw std::invalid_argument("partitions over different ground sets");
      if ((*p)[i] < 0) continue;
      auto [it, fresh] = first.emplace((*p)[i], i);
      if (!fresh) parent[find(i)] = find(it->second);
    }
  }
  Partition out(n, -1);
  for (int i = 0; i < n; ++i)
    if (a[i] >= 0) out[i] = find(i);
  return canonical(out);
}

Partition restrict_to(const Partition& p, const std::vector<char>& keep) {
  Partition out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (keep[i]) out.push_back(p[i]);
  return canonical(out);
}

Partition extend(const Partition& p, int pos) {
  int fresh = 0;
  for (int l : p) fresh = std::max(fresh, l + 1);
  Partition out = p;
  out.insert(out.begin() + pos, fresh);
  return canonical(out);
}

bool refines(const Partition& a, const Partition& b) {
  std::map<int, int> image;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0) continue;
    if (b[i] < 0) return false;
    auto [it, fresh] = image.emplace(a[i], b[i]);
    if (it->second != b[i]) return false;
  }
  return true;
}

namespace {

// Key layout: [k, label per bag position (-1 = deleted), grid index per block].
using Key = std::vector<int>;

struct Entry {
  Key key;
  double d = 0;  // pair mass of components that left the bag
  int from_a = -1, from_b = -1;
};

struct Table {
  std::vector<Entry> entries;
  std::map<Key, int> index;

  void offer(Key key, double d, int a, int b) {
    auto [it, fresh] = index.emplace(key, static_cast<int>(entries.size()));
    if (fresh) {
      entries.push_back({std::move(key), d, a, b});
    } else if (d < entries[it->second].d) {
      entries[it->second].d = d;
      entries[it->second].from_a = a;
      entries[it->second].from_b = b;
    }
  }
};

struct State {
  int k = 0;
  Partition labels;
  std::vector<int> size;  // grid index per label, before canonicalization

  static State decode(const Key& key, int bag) {
    State s;
    s.k = key[0];
    s.labels.assign(key.begin() + 1, key.begin() + 1 + bag);
    s.size.assign(key.begin() + 1 + bag, key.end());
    return s;
  }

  int deleted_in_bag() const { return static_cast<int>(std::count(labels.begin(), labels.end(), -1)); }

  Key encode() const {
    Key key{k};
    std::map<int, int> relabel;
    std::vector<int> sizes;
    for (int l : labels) {
      if (l < 0) {
        key.push_back(-1);
        continue;
      }
      auto [it, fresh] = relabel.emplace(l, static_cast<int>(relabel.size()));
      if (fresh) sizes.push_back(size[l]);
      key.push_back(it->second);
    }
    key.insert(key.end(), sizes.begin(), sizes.end());
    return key;
  }
};

int position(const std::vector<int>& bag, int v) {
  return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

class Dp {
 public:
  Dp(const Graph& g, const NiceTreeDecomposition& nice, const SizeGrid& grid, int budget)
      : g_(g), nice_(nice), grid_(grid), budget_(budget), tables_(nice.nodes.size()) {}

  void run() {
    for (std::size_t x = 0; x < nice_.nodes.size(); ++x) {
      const auto& node = nice_.nodes[x];
      switch (node.kind) {
        case NiceKind::leaf:
          tables_[x].offer({0}, 0.0, -1, -1);
          break;
        case NiceKind::introduce:
          introduce(x);
          break;
        case NiceKind::forget:
          forget(x);
          break;
        case NiceKind::join:
          join(x);
          break;
      }
      max_states_ = std::max(max_states_, tables_[x].entries.size());
    }
  }

  std::size_t max_states() const { return max_states_; }

  // Best root entry over all k <= budget; smallest k wins ties.
  int best_root() const {
    const auto& root = tables_.back();
    int best = -1;
    for (const auto& [key, i] : root.index)
      if (best < 0 || root.entries[i].d < root.entries[best].d) best = i;
    if (best < 0) throw std::logic_error("treewidth table at the root is empty");
    return best;
  }

  double estimate(int entry) const { return tables_.back().entries[entry].d; }

  std::vector<int> witness(int entry) const {
    std::vector<int> deleted;
    std::vector<std::pair<int, int>> stack{{nice_.root(), entry}};
    while (!stack.empty()) {
      auto [x, i] = stack.back();
      stack.pop_back();
      const auto& node = nice_.nodes[x];
      const auto& e = tables_[x].entries[i];
      if (node.kind == NiceKind::forget) {
        const int c = node.children[0];
        const auto& child = tables_[c].entries[e.from_a];
        if (child.key[1 + position(nice_.nodes[c].bag, node.vertex)] < 0) deleted.push_back(node.vertex);
      }
      if (e.from_a >= 0) stack.push_back({node.children[0], e.from_a});
      if (e.from_b >= 0) stack.push_back({node.children[1], e.from_b});
    }
    std::sort(deleted.begin(), deleted.end());
    return deleted;
  }

 private:
  bool within_budget(const State& s) const { return s.k + s.deleted_in_bag() <= budget_; }

  void introduce(std::size_t x) {
    const auto& node = nice_.nodes[x];
    const int c = node.children[0];
    const int bag = static_cast<int>(nice_.nodes[c].bag.size());
    const int pos = position(node.bag, node.vertex);
    const auto& child_bag = nice_.nodes[c].bag;
    for (const auto& [key, i] : tables_[c].index) {
      const State s = State::decode(key, bag);
      if (g_.deletable(node.vertex)) {
        State del = s;
        del.labels.insert(del.labels.begin() + pos, -1);
        if (within_budget(del)) tables_[x].offer(del.encode(), tables_[c].entries[i].d, i, -1);
      }
      // Keep v: every block with a neighbor of v merges with it.
      State keep = s;
      const int fresh = static_cast<int>(keep.size.size());
      std::vector<char> merged(fresh, 0);
      double total = 0;
      for (int q = 0; q < bag; ++q) {
        const int l = s.labels[q];
        if (l < 0 || merged[l] || !g_.has_edge(node.vertex, child_bag[q])) continue;
        merged[l] = 1;
        total += grid_.value(s.size[l]);
      }
      for (int& l : keep.labels)
        if (l >= 0 && merged[l]) l = fresh;
      keep.labels.insert(keep.labels.begin() + pos, fresh);
      const int count = static_cast<int>(std::count(merged.begin(), merged.end(), 1));
      int merged_size = 0;
      if (count == 1) {
        merged_size = s.size[std::find(merged.begin(), merged.end(), 1) - merged.begin()];
      } else if (count > 1) {
        merged_size = grid_.round_up(total);
      }
      keep.size.push_back(merged_size);
      tables_[x].offer(keep.encode(), tables_[c].entries[i].d, i, -1);
    }
  }

  void forget(std::size_t x) {
    const auto& node = nice_.nodes[x];
    const int c = node.children[0];
    const int bag = static_cast<int>(nice_.nodes[c].bag.size());
    const int pos = position(nice_.nodes[c].bag, node.vertex);
    for (const auto& [key, i] : tables_[c].index) {
      State s = State::decode(key, bag);
      double d = tables_[c].entries[i].d;
      const int l = s.labels[pos];
      if (l < 0) {
        ++s.k;
      } else if (std::count(s.labels.begin(), s.labels.end(), l) == 1) {
        // The component leaves the bag for good.
        const double size = grid_.value(s.size[l]);
        d += (size + 1) * size / 2;
      } else {
        s.size[l] = grid_.round_up(grid_.value(s.size[l]) + 1);
      }
      s.labels.erase(s.labels.begin() + pos);
      tables_[x].offer(s.encode(), d, i, -1);
    }
  }

  void join(std::size_t x) {
    const auto& node = nice_.nodes[x];
    const int c1 = node.children[0], c2 = node.children[1];
    const int bag = static_cast<int>(node.bag.size());
    std::map<std::vector<char>, std::vector<int>> by_pattern;
    for (const auto& [key, i] : tables_[c2].index) {
      std::vector<char> pattern(bag);
      for (int q = 0; q < bag; ++q) pattern[q] = key[1 + q] < 0;
      by_pattern[pattern].push_back(i);
    }
    for (const auto& [key1, i1] : tables_[c1].index) {
      const State s1 = State::decode(key1, bag);
      std::vector<char> pattern(bag);
      for (int q = 0; q < bag; ++q) pattern[q] = s1.labels[q] < 0;
      auto match = by_pattern.find(pattern);
      if (match == by_pattern.end()) continue;
      for (int i2 : match->second) {
        const State s2 = State::decode(tables_[c2].entries[i2].key, bag);
        State s;
        s.k = s1.k + s2.k;
        if (s.k + s1.deleted_in_bag() > budget_) continue;
        s.labels = partition_join(s1.labels, s2.labels);
        const int blocks = s.labels.empty() ? 0 : *std::max_element(s.labels.begin(), s.labels.end()) + 1;
        std::vector<double> total(std::max(blocks, 0), 0.0);
        std::vector<char> seen1(s1.size.size(), 0), seen2(s2.size.size(), 0);
        for (int q = 0; q < bag; ++q) {
          const int l = s.labels[q];
          if (l < 0) continue;
          if (!seen1[s1.labels[q]]) {
            seen1[s1.labels[q]] = 1;
            total[l] += grid_.value(s1.size[s1.labels[q]]);
          }
          if (!seen2[s2.labels[q]]) {
            seen2[s2.labels[q]] = 1;
            total[l] += grid_.value(s2.size[s2.labels[q]]);
          }
        }
        for (double t : total) s.size.push_back(grid_.round_up(t));
        tables_[x].offer(s.encode(), tables_[c1].entries[i1].d + tables_[c2].entries[i2].d, i1, i2);
      }
    }
  }

  const Graph& g_;
  const NiceTreeDecomposition& nice_;
  const SizeGrid& grid_;
  int budget_;
  std::vector<Table> tables_;
  std::size_t max_states_ = 0;
};

}  // namespace

Result solve(const Instance& inst, const Options& options) {
  const Graph& g = inst.graph;
  if (!g.unit_weights()) throw InputError("treewidth solver needs unit weights; expand them first");
  if (options.mode == Mode::apx && !(options.eps > 0)) throw InputError("eps must be positive");
  if (inst.k < 0) throw InputError("negative budget");

  TreeDecomposition td = options.td ? *options.td : heuristic_td(g);
  if (options.td) validate(td, g);
  const int cap = options.mode == Mode::exact ? options.max_width_exact : options.max_width_apx;
  if (td.width() > cap) throw CapExceeded("tree decomposition width " + std::to_string(td.width()), cap);

  const NiceTreeDecomposition nice = nicify(td);
  const int n = g.size();
  const int h = std::max(nice.height(), 1);

  Result result;
  result.width = nice.width();
  result.height = nice.height();
  const bool exact_grid = options.mode == Mode::exact || options.exact_grid;
  SizeGrid grid;
  if (exact_grid) {
    grid = SizeGrid::exact(n);
  } else {
    const double ep = eps_prime(options.eps);
    grid = SizeGrid::geometric(ep / (2 * h), (1 + ep) * std::max(n, 1));
  }
  result.delta = grid.delta();
  result.grid_size = grid.size();

  Dp dp(g, nice, grid, std::min(inst.k, n));
  dp.run();
  const int best = dp.best_root();
  result.max_states = dp.max_states();
  result.estimate = dp.estimate(best);
  result.solution.deleted = dp.witness(best);
  result.solution.pairs = pairs_without(g, result.solution.deleted);
  result.solution.optimal = exact_grid;

  if (static_cast<int>(result.solution.deleted.size()) > inst.k)
    throw std::logic_error("treewidth witness exceeds the budget");
  const double pairs = static_cast<double>(result.solution.pairs);
  if (exact_grid ? pairs != result.estimate : pairs > result.estimate * (1 + 1e-6) + 1e-6)
    throw std::logic_error("treewidth witness disagrees with its table entry");
  return result;
}

}  // namespace cnc::tw
