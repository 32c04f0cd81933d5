#include "cnc/vertex_integrity.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "cnc/errors.hpp"

namespace cnc::vi {

namespace {

bool separator_search(const Graph& g, std::vector<char>& in_u, int u_size, int p) {
  const auto comps = components(g, in_u);
  const std::vector<int>* oversized = nullptr;
  for (const auto& c : comps)
    if (static_cast<int>(c.size()) > p - u_size) {
      oversized = &c;
      break;
    }
  if (oversized == nullptr) return true;
  if (u_size >= p) return false;

  // First p - |U| + 1 vertices of a BFS from the smallest member: connected,
  // too large to survive, so one of them belongs to U.
  const std::size_t want = static_cast<std::size_t>(p - u_size + 1);
  std::vector<int> order{oversized->front()};
  std::vector<char> seen(g.size(), 0);
  seen[order[0]] = 1;
  for (std::size_t i = 0; i < order.size() && order.size() < want; ++i)
    for (int w : g.neighbors(order[i])) {
      if (in_u[w] || seen[w]) continue;
      seen[w] = 1;
      order.push_back(w);
      if (order.size() == want) break;
    }

  for (int w : order) {
    in_u[w] = 1;
    if (separator_search(g, in_u, u_size + 1, p)) return true;
    in_u[w] = 0;
  }
  return false;
}

// Restricted growth strings of length m: a[0] = 0, a[i] <= max(a[..i]) + 1.
template <class Visit>
void for_each_partition(int m, Visit&& visit) {
  std::vector<int> a(m, 0);
  if (m == 0) {
    visit(a, 0);
    return;
  }
  while (true) {
    int blocks = 0;
    for (int x : a) blocks = std::max(blocks, x + 1);
    visit(a, blocks);
    int i = m - 1;
    while (i > 0) {
      int prefix_max = 0;
      for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, a[j]);
      if (a[i] <= prefix_max) break;
      --i;
    }
    if (i == 0) return;
    ++a[i];
    for (int j = i + 1; j < m; ++j) a[j] = 0;
  }
}

struct DpNode {
  Count internal = 0;
  std::vector<Count> prev;
  int choice = -1;
};

using StateKey = std::vector<Count>;  // [budget used, y_1, ..., y_l]

struct DpLayers {
  std::vector<std::map<StateKey, DpNode>> layers;
};

DpLayers run_dp(const std::vector<std::vector<MenuEntry>>& menus, std::size_t blocks, int max_budget) {
  DpLayers out;
  out.layers.resize(menus.size() + 1);
  out.layers[0][StateKey(blocks + 1, 0)] = DpNode{};
  for (std::size_t j = 0; j < menus.size(); ++j) {
    auto& next = out.layers[j + 1];
    for (const auto& [key, node] : out.layers[j]) {
      for (std::size_t q = 0; q < menus[j].size(); ++q) {
        const MenuEntry& e = menus[j][q];
        if (key[0] + e.cost > static_cast<Count>(max_budget)) continue;
        StateKey nk = key;
        nk[0] += e.cost;
        for (std::size_t i = 0; i < blocks; ++i) nk[i + 1] += e.attached[i];
        const Count value = node.internal + e.internal;
        auto it = next.find(nk);
        if (it == next.end() || value < it->second.internal)
          next[nk] = DpNode{value, key, static_cast<int>(q)};
      }
    }
  }
  return out;
}

Count surrogate(const StateKey& key, const DpNode& node, std::span<const Count> block_sizes) {
  Count total = node.internal;
  for (std::size_t i = 0; i < block_sizes.size(); ++i) total += choose2(block_sizes[i] + key[i + 1]);
  return total;
}

// Best final state with budget exactly `budget`, or any budget when -1.
Assignment extract(const DpLayers& dp, std::span<const Count> block_sizes, int budget) {
  Assignment best;
  const StateKey* best_key = nullptr;
  for (const auto& [key, node] : dp.layers.back()) {
    if (budget >= 0 && key[0] != static_cast<Count>(budget)) continue;
    Cost value(surrogate(key, node, block_sizes));
    if (value < best.value) {
      best.value = value;
      best_key = &key;
    }
  }
  if (best_key == nullptr) return best;
  best.choice.assign(dp.layers.size() - 1, -1);
  StateKey key = *best_key;
  for (std::size_t j = dp.layers.size() - 1; j > 0; --j) {
    const DpNode& node = dp.layers[j].at(key);
    best.choice[j - 1] = node.choice;
    key = node.prev;
  }
  return best;
}

}  // namespace

std::optional<ViDecomposition> compute_separator(const Graph& g, int p) {
  if (p < 0) throw std::invalid_argument("vertex integrity target must be non-negative");
  std::vector<char> in_u(g.size(), 0);
  if (!separator_search(g, in_u, 0, p)) return std::nullopt;
  ViDecomposition d;
  for (int v = 0; v < g.size(); ++v)
    if (in_u[v]) d.separator.push_back(v);
  d.components = components(g, in_u);
  std::size_t largest = 0;
  for (const auto& c : d.components) largest = std::max(largest, c.size());
  d.p = static_cast<int>(d.separator.size() + largest);
  return d;
}

ViDecomposition decompose(const Graph& g, const Options& options) {
  const int limit = options.max_separator + options.max_component;
  for (int p = g.size() == 0 ? 0 : 1; p <= g.size(); ++p) {
    if (p > limit) throw CapExceeded("vertex integrity exceeds separator plus component caps", limit);
    auto d = compute_separator(g, p);
    if (!d) continue;
    if (static_cast<int>(d->separator.size()) > options.max_separator)
      throw CapExceeded("vi separator too large", options.max_separator);
    for (const auto& c : d->components)
      if (static_cast<int>(c.size()) > options.max_component)
        throw CapExceeded("vi component too large", options.max_component);
    return *d;
  }
  throw std::logic_error("no vi separator found up to p = n");
}

std::vector<Guess> enumerate_guesses(const Graph& g, std::span<const int> separator, int budget) {
  const int u = static_cast<int>(separator.size());
  if (u > 24) throw CapExceeded("separator too large to enumerate guesses", 24);
  std::vector<Guess> out;
  for (std::uint32_t mask = 0; mask < (1u << u); ++mask) {
    if (__builtin_popcount(mask) > budget) continue;
    Guess base;
    std::vector<char> outside(g.size(), 1);
    bool ok = true;
    for (int i = 0; i < u; ++i) {
      if (mask >> i & 1) {
        base.deleted.push_back(separator[i]);
        ok &= g.deletable(separator[i]);
      } else {
        outside[separator[i]] = 0;
      }
    }
    if (!ok) continue;
    const auto pieces = components(g, outside);
    for_each_partition(static_cast<int>(pieces.size()), [&](const std::vector<int>& label, int blocks) {
      Guess guess = base;
      guess.blocks.assign(blocks, {});
      for (std::size_t c = 0; c < pieces.size(); ++c)
        guess.blocks[label[c]].insert(guess.blocks[label[c]].end(), pieces[c].begin(), pieces[c].end());
      for (auto& b : guess.blocks) std::sort(b.begin(), b.end());
      out.push_back(std::move(guess));
    });
  }
  return out;
}

std::vector<MenuEntry> component_menu(const Graph& g, std::span<const int> component, const Guess& guess) {
  const int c = static_cast<int>(component.size());
  if (c > 24) throw CapExceeded("component too large for menu enumeration", 24);
  const std::size_t blocks = guess.blocks.size();
  std::vector<int> local(g.size(), -1), block_of(g.size(), -1);
  for (int i = 0; i < c; ++i) local[component[i]] = i;
  for (std::size_t b = 0; b < blocks; ++b)
    for (int v : guess.blocks[b]) block_of[v] = static_cast<int>(b);

  std::vector<std::uint32_t> adj(c, 0);
  std::vector<std::vector<int>> touches(c);  // blocks adjacent to each vertex
  std::uint32_t fixed = 0;
  for (int i = 0; i < c; ++i) {
    const int v = component[i];
    if (!g.deletable(v)) fixed |= 1u << i;
    for (int w : g.neighbors(v)) {
      if (local[w] >= 0) adj[i] |= 1u << local[w];
      if (block_of[w] >= 0) touches[i].push_back(block_of[w]);
    }
  }

  std::vector<MenuEntry> menu;
  for (std::uint32_t mask = 0; mask < (1u << c); ++mask) {
    if (mask & fixed) continue;
    MenuEntry e;
    e.attached.assign(blocks, 0);
    e.cost = __builtin_popcount(mask);
    std::uint32_t unseen = ((c == 32 ? 0u : (1u << c)) - 1u) & ~mask;
    bool valid = true;
    while (unseen != 0 && valid) {
      std::uint32_t piece = unseen & (~unseen + 1);
      std::uint32_t frontier = piece;
      while (frontier != 0) {
        int i = __builtin_ctz(frontier);
        frontier &= frontier - 1;
        std::uint32_t grow = adj[i] & unseen & ~piece;
        piece |= grow;
        frontier |= grow;
      }
      unseen &= ~piece;
      int block = -1;
      Count size = 0;
      for (std::uint32_t rest = piece; rest != 0; rest &= rest - 1) {
        int i = __builtin_ctz(rest);
        size += g.weight(component[i]);
        for (int b : touches[i]) {
          if (block == -1) block = b;
          else if (block != b) valid = false;
        }
      }
      if (block >= 0) e.attached[block] += size;
      else e.internal += choose2(size);
    }
    if (!valid) continue;
    for (int i = 0; i < c; ++i)
      if (mask >> i & 1) e.subset.push_back(component[i]);
    menu.push_back(std::move(e));
  }
  return menu;
}

Assignment optimize_assignment(const std::vector<std::vector<MenuEntry>>& menus,
                               std::span<const Count> block_sizes, int budget) {
  if (budget < 0) return {};
  const auto dp = run_dp(menus, block_sizes.size(), budget);
  return extract(dp, block_sizes, budget);
}

Solution solve(const Instance& inst, const Options& options) {
  const Graph& g = inst.graph;
  if (!g.unit_weights()) throw InputError("vertex integrity solver requires unit weights");
  const ViDecomposition dec = decompose(g, options);

  Cost best = Cost::infinity();
  std::vector<int> best_set;
  for (const Guess& guess : enumerate_guesses(g, dec.separator, inst.k)) {
    std::vector<std::vector<MenuEntry>> menus;
    bool feasible = true;
    for (const auto& comp : dec.components) {
      menus.push_back(component_menu(g, comp, guess));
      feasible &= !menus.back().empty();
    }
    if (!feasible) continue;
    std::vector<Count> sizes;
    for (const auto& b : guess.blocks) sizes.push_back(static_cast<Count>(b.size()));
    const auto dp = run_dp(menus, sizes.size(), inst.k - static_cast<int>(guess.deleted.size()));
    Assignment a = extract(dp, sizes, -1);
    if (!(a.value < best)) continue;
    best = a.value;
    best_set = guess.deleted;
    for (std::size_t j = 0; j < menus.size(); ++j) {
      const auto& s = menus[j][a.choice[j]].subset;
      best_set.insert(best_set.end(), s.begin(), s.end());
    }
  }
  if (best.is_infinite()) throw std::logic_error("vertex integrity solver found no feasible guess");

  Solution sol;
  std::sort(best_set.begin(), best_set.end());
  sol.deleted = best_set;
  sol.pairs = pairs_without(g, sol.deleted);
  if (sol.pairs > best.value()) throw std::logic_error("vi surrogate undercounts its witness");
  sol.optimal = true;
  return sol;
}

}  // namespace cnc::vi
