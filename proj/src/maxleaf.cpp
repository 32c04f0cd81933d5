#include "cnc/maxleaf.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <stdexcept>

#include "cnc/errors.hpp"

namespace cnc::maxleaf {

std::vector<int> high_degree_vertices(const Graph& g) {
  std::vector<int> out;
  for (int v = 0; v < g.size(); ++v)
    if (g.degree(v) >= 3) out.push_back(v);
  return out;
}

namespace {

// Marks bridges of g; bridge[u] holds the neighbors v such that uv is a bridge.
std::vector<std::vector<int>> find_bridges(const Graph& g) {
  const int n = g.size();
  std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
  std::vector<std::size_t> next(n, 0);
  std::vector<std::vector<int>> bridges(n);
  int timer = 0;
  for (int s = 0; s < n; ++s) {
    if (disc[s] != -1) continue;
    std::vector<int> stack{s};
    disc[s] = low[s] = timer++;
    while (!stack.empty()) {
      int u = stack.back();
      auto nb = g.neighbors(u);
      if (next[u] < nb.size()) {
        int v = nb[next[u]++];
        if (v == parent[u]) continue;
        if (disc[v] == -1) {
          parent[v] = u;
          disc[v] = low[v] = timer++;
          stack.push_back(v);
        } else {
          low[u] = std::min(low[u], disc[v]);
        }
      } else {
        stack.pop_back();
        int p = parent[u];
        if (p != -1) {
          low[p] = std::min(low[p], low[u]);
          if (low[u] > disc[p]) {
            bridges[p].push_back(u);
            bridges[u].push_back(p);
          }
        }
      }
    }
  }
  return bridges;
}

std::vector<int> walk_order(const Graph& g, const std::vector<int>& comp, bool cycle) {
  int start = comp.front();
  if (!cycle)
    for (int v : comp)
      if (g.degree(v) <= 1) {
        start = v;
        break;
      }
  std::vector<int> order{start};
  int prev = -1, cur = start;
  while (order.size() < comp.size()) {
    int nxt = -1;
    for (int w : g.neighbors(cur))
      if (w != prev && w != start) {
        nxt = w;
        break;
      }
    if (nxt == -1) break;
    order.push_back(nxt);
    prev = cur;
    cur = nxt;
  }
  return order;
}

Graph chain_graph(const Graph& g, const std::vector<int>& order, bool cycle) {
  Graph out(static_cast<int>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.set_weight(static_cast<int>(i), g.weight(order[i]));
    out.set_deletable(static_cast<int>(i), g.deletable(order[i]));
    if (i > 0) out.add_edge(static_cast<int>(i) - 1, static_cast<int>(i));
  }
  if (cycle && order.size() >= 3) out.add_edge(0, static_cast<int>(order.size()) - 1);
  return out;
}

}  // namespace

std::vector<ComponentShape> contract_safe_cycles(const Graph& g) {
  std::vector<ComponentShape> out;
  const auto bridges = find_bridges(g);
  for (const auto& comp : components(g)) {
    std::size_t edges = 0;
    int max_deg = 0;
    bool has_fixed = false;
    for (int v : comp) {
      edges += g.degree(v);
      max_deg = std::max(max_deg, g.degree(v));
      has_fixed |= !g.deletable(v);
    }
    edges /= 2;

    ComponentShape shape;
    if (!has_fixed && max_deg <= 2) {
      const bool cycle = edges == comp.size() && comp.size() >= 3;
      shape.kind = cycle ? ShapeKind::cycle : ShapeKind::path;
      auto order = walk_order(g, comp, cycle);
      shape.tree = chain_graph(g, order, cycle);
      for (int v : order) shape.members.push_back({v});
      out.push_back(std::move(shape));
      continue;
    }

    // 2-edge-connected blocks: components after dropping bridges.
    std::vector<int> block(g.size(), -1);
    std::vector<std::vector<int>> blocks;
    for (int s : comp) {
      if (block[s] != -1) continue;
      const int id = static_cast<int>(blocks.size());
      blocks.emplace_back();
      std::vector<int> stack{s};
      block[s] = id;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        blocks[id].push_back(u);
        for (int v : g.neighbors(u)) {
          if (block[v] != -1) continue;
          if (std::find(bridges[u].begin(), bridges[u].end(), v) != bridges[u].end()) continue;
          block[v] = id;
          stack.push_back(v);
        }
      }
      std::sort(blocks[id].begin(), blocks[id].end());
    }

    shape.kind = ShapeKind::tree;
    shape.tree = Graph(static_cast<int>(blocks.size()));
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& members = blocks[b];
      Count w = 0;
      bool fixed = false;
      for (int v : members) {
        w += g.weight(v);
        fixed |= !g.deletable(v);
      }
      if (members.size() > 1 && !fixed)
        throw std::logic_error("cycle without an undeletable vertex inside a component that is not a cycle");
      shape.tree.set_weight(static_cast<int>(b), w);
      shape.tree.set_deletable(static_cast<int>(b), members.size() == 1 && !fixed);
      shape.members.push_back(members);
    }
    for (int u : comp)
      for (int v : bridges[u])
        if (u < v) shape.tree.add_edge(block[u], block[v]);
    out.push_back(std::move(shape));
  }
  return out;
}

TreeDP::TreeDP(const Graph& tree, int k) : tree_(tree), k_(k), nodes_(tree.size()) {
  if (static_cast<std::size_t>(tree.size()) != tree.edge_count() + components(tree).size())
    throw std::invalid_argument("TreeDP requires an acyclic graph");
  // Root every component at its smallest vertex; children lists in index order.
  std::vector<int> parent(tree.size(), -2);
  std::vector<int> order;
  for (int r = 0; r < tree.size(); ++r) {
    if (parent[r] != -2) continue;
    roots_.push_back(r);
    parent[r] = -1;
    std::vector<int> stack{r};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      order.push_back(u);
      for (int v : tree.neighbors(u))
        if (parent[v] == -2) {
          parent[v] = u;
          nodes_[u].children.push_back(v);
          stack.push_back(v);
        }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) solve(*it);

  std::vector<BudgetFunction> per_root;
  for (int r : roots_) per_root.emplace_back(nodes_[r].closed);
  f_ = combine(per_root, k_).result();
}

void TreeDP::solve(int v) {
  Node& node = nodes_[v];
  const Cost inf = Cost::infinity();
  const auto w = static_cast<std::size_t>(tree_.weight(v));

  std::vector<std::vector<Cost>> keep(k_ + 1, std::vector<Cost>(w + 1, inf));
  keep[0][w] = Cost(0);
  std::vector<Cost> del(k_ + 1, inf);
  if (tree_.deletable(v) && k_ >= 1) del[1] = Cost(0);
  node.keep_steps.push_back(keep);
  node.del_steps.push_back(del);

  for (int c : node.children) {
    const Node& child = nodes_[c];
    const auto& ck = child.keep_steps.back();
    const auto& cd = child.del_steps.back();
    const std::size_t width = keep[0].size() + ck[0].size() - 1;
    std::vector<std::vector<Cost>> merged(k_ + 1, std::vector<Cost>(width, inf));
    for (int b1 = 0; b1 <= k_; ++b1)
      for (std::size_t s1 = 0; s1 < keep[b1].size(); ++s1) {
        const Cost base = keep[b1][s1];
        if (base.is_infinite()) continue;
        for (int b2 = 0; b1 + b2 <= k_; ++b2) {
          if (cd[b2].finite()) merged[b1 + b2][s1] = std::min(merged[b1 + b2][s1], base + cd[b2]);
          for (std::size_t s2 = 0; s2 < ck[b2].size(); ++s2)
            if (ck[b2][s2].finite())
              merged[b1 + b2][s1 + s2] = std::min(merged[b1 + b2][s1 + s2], base + ck[b2][s2]);
        }
      }
    keep = std::move(merged);

    std::vector<Cost> ndel(k_ + 1, inf);
    for (int b1 = 0; b1 <= k_; ++b1) {
      if (del[b1].is_infinite()) continue;
      for (int b2 = 0; b1 + b2 <= k_; ++b2) ndel[b1 + b2] = std::min(ndel[b1 + b2], del[b1] + child.closed[b2]);
    }
    del = std::move(ndel);
    node.keep_steps.push_back(keep);
    node.del_steps.push_back(del);
  }

  node.closed.assign(k_ + 1, inf);
  for (int b = 0; b <= k_; ++b) {
    Cost best = del[b];
    for (std::size_t s = 0; s < keep[b].size(); ++s)
      if (keep[b][s].finite()) best = std::min(best, keep[b][s] + Cost(choose2(s)));
    node.closed[b] = best;
  }
}

void TreeDP::trace_closed(int v, int b, std::vector<int>& out) const {
  const Node& node = nodes_[v];
  const auto& keep = node.keep_steps.back();
  for (std::size_t s = 0; s < keep[b].size(); ++s)
    if (keep[b][s].finite() && keep[b][s] + Cost(choose2(s)) == node.closed[b]) {
      trace_keep(v, b, static_cast<int>(s), out);
      return;
    }
  if (node.del_steps.back()[b] == node.closed[b]) {
    trace_del(v, b, out);
    return;
  }
  throw std::logic_error("tree DP backtracking failed");
}

void TreeDP::trace_keep(int v, int b, int s, std::vector<int>& out) const {
  const Node& node = nodes_[v];
  for (std::size_t t = node.children.size(); t > 0; --t) {
    const int c = node.children[t - 1];
    const Node& child = nodes_[c];
    const auto& before = node.keep_steps[t - 1];
    const Cost target = node.keep_steps[t][b][s];
    bool found = false;
    for (int b2 = 0; b2 <= b && !found; ++b2) {
      const int b1 = b - b2;
      if (s < static_cast<int>(before[b1].size()) && before[b1][s] + child.del_steps.back()[b2] == target) {
        trace_del(c, b2, out);
        b = b1;
        found = true;
        break;
      }
      const auto& ck = child.keep_steps.back()[b2];
      for (int s2 = 0; s2 <= s && s2 < static_cast<int>(ck.size()); ++s2) {
        const int s1 = s - s2;
        if (s1 < static_cast<int>(before[b1].size()) && ck[s2].finite() && before[b1][s1] + ck[s2] == target) {
          trace_keep(c, b2, s2, out);
          b = b1;
          s = s1;
          found = true;
          break;
        }
      }
    }
    if (!found) throw std::logic_error("tree DP backtracking failed");
  }
}

void TreeDP::trace_del(int v, int b, std::vector<int>& out) const {
  const Node& node = nodes_[v];
  out.push_back(v);
  for (std::size_t t = node.children.size(); t > 0; --t) {
    const int c = node.children[t - 1];
    const Cost target = node.del_steps[t][b];
    bool found = false;
    for (int b2 = 0; b2 <= b; ++b2)
      if (node.del_steps[t - 1][b - b2] + nodes_[c].closed[b2] == target) {
        trace_closed(c, b2, out);
        b -= b2;
        found = true;
        break;
      }
    if (!found) throw std::logic_error("tree DP backtracking failed");
  }
}

std::vector<int> TreeDP::witness(int j) const {
  if (f_(j).is_infinite()) throw std::domain_error("no deletion set of that size");
  std::vector<BudgetFunction> per_root;
  for (int r : roots_) per_root.emplace_back(nodes_[r].closed);
  const auto split = combine(per_root, k_).recover_split(j);
  std::vector<int> out;
  for (std::size_t i = 0; i < roots_.size(); ++i) trace_closed(roots_[i], split[i], out);
  std::sort(out.begin(), out.end());
  return out;
}

BudgetFunction tree_budget_function(const Graph& tree, int k) { return TreeDP(tree, k).function(); }

namespace {

Count balanced_pairs(Count total, Count parts) {
  if (parts == 0) return choose2(total);
  const Count q = total / parts, rem = total % parts;
  return rem * choose2(q + 1) + (parts - rem) * choose2(q);
}

}  // namespace

BudgetFunction path_budget_function(int len, int k) {
  BudgetFunction f(k);
  for (int j = 0; j <= std::min(k, len); ++j) f[j] = Cost(balanced_pairs(len - j, j + 1));
  return f;
}

BudgetFunction cycle_budget_function(int len, int k) {
  BudgetFunction f(k);
  for (int j = 0; j <= std::min(k, len); ++j) f[j] = Cost(j == 0 ? choose2(len) : balanced_pairs(len - j, j));
  return f;
}

std::vector<int> path_witness(int len, int j) {
  if (j < 0 || j > len) throw std::domain_error("path witness budget out of range");
  std::vector<int> out;
  const int parts = j + 1, total = len - j;
  const int q = total / parts, rem = total % parts;
  int pos = 0;
  for (int i = 0; i < j; ++i) {
    pos += q + (i < rem ? 1 : 0);
    out.push_back(pos++);
  }
  return out;
}

std::vector<int> cycle_witness(int len, int j) {
  if (j < 0 || j > len) throw std::domain_error("cycle witness budget out of range");
  if (j == 0) return {};
  std::vector<int> out{0};
  for (int p : path_witness(len - 1, j - 1)) out.push_back(p + 1);
  return out;
}

namespace {

// Budget function of one component shape plus a way to realize any finite entry.
struct ShapeSolver {
  BudgetFunction f;
  std::function<std::vector<int>(int)> witness;  // vertices of the shape's graph
};

ShapeSolver shape_solver(const ComponentShape& shape, int k) {
  const Graph& t = shape.tree;
  bool simple = t.unit_weights();
  for (int v = 0; v < t.size(); ++v) simple &= t.deletable(v);
  const int len = t.size();

  if (shape.kind == ShapeKind::path && simple)
    return {path_budget_function(len, k), [len](int j) { return path_witness(len, j); }};
  if (shape.kind == ShapeKind::cycle && simple)
    return {cycle_budget_function(len, k), [len](int j) { return cycle_witness(len, j); }};
  if (shape.kind != ShapeKind::cycle) {
    auto dp = std::make_shared<TreeDP>(t, k);
    return {dp->function(), [dp](int j) { return dp->witness(j); }};
  }

  // Weighted cycle: no deletion, or condition on the smallest deleted position.
  BudgetFunction f(k);
  f[0] = Cost(choose2(t.total_weight()));
  std::vector<std::shared_ptr<TreeDP>> opened(len);
  std::vector<std::vector<int>> opened_map(len);
  for (int i = 0; i < len; ++i) {
    if (!t.deletable(i)) continue;
    std::vector<int> rest;
    for (int d = 1; d < len; ++d) rest.push_back((i + d) % len);
    Graph path(len - 1);
    for (int p = 0; p < len - 1; ++p) {
      path.set_weight(p, t.weight(rest[p]));
      path.set_deletable(p, t.deletable(rest[p]));
      if (p > 0) path.add_edge(p - 1, p);
    }
    opened[i] = std::make_shared<TreeDP>(path, std::max(k - 1, 0));
    opened_map[i] = rest;
    for (int j = 1; j <= k; ++j) f[j] = std::min(f[j], opened[i]->function()(j - 1));
  }
  return {f, [f, opened, opened_map, len](int j) {
            if (j == 0) return std::vector<int>{};
            for (int i = 0; i < len; ++i) {
              if (!opened[i] || opened[i]->function()(j - 1) != f(j)) continue;
              std::vector<int> out{i};
              for (int p : opened[i]->witness(j - 1)) out.push_back(opened_map[i][p]);
              std::sort(out.begin(), out.end());
              return out;
            }
            throw std::logic_error("cycle witness not found");
          }};
}

}  // namespace

Solution solve(const Instance& inst, const Options& options) {
  const Graph& g = inst.graph;
  const auto high = high_degree_vertices(g);
  if (static_cast<int>(high.size()) > options.max_high_degree)
    throw CapExceeded("max-leaf solver: " + std::to_string(high.size()) + " vertices of degree >= 3",
                      static_cast<std::uint64_t>(options.max_high_degree));

  Solution best;
  bool have = false;
  const std::uint64_t guesses = std::uint64_t{1} << high.size();
  for (std::uint64_t mask = 0; mask < guesses; ++mask) {
    std::vector<int> guessed;
    bool ok = true;
    for (std::size_t i = 0; i < high.size(); ++i)
      if (mask >> i & 1) {
        guessed.push_back(high[i]);
        ok &= g.deletable(high[i]);
      }
    if (!ok || static_cast<int>(guessed.size()) > inst.k) continue;
    const int budget = inst.k - static_cast<int>(guessed.size());

    Graph marked = g;
    for (int v : high) marked.set_deletable(v, true);
    auto rest = delete_vertices(marked, guessed);
    for (int v : high)
      if (rest.old_to_new[v] != -1) rest.graph.set_deletable(rest.old_to_new[v], false);

    const auto shapes = contract_safe_cycles(rest.graph);
    std::vector<ShapeSolver> solvers;
    std::vector<BudgetFunction> fs;
    for (const auto& shape : shapes) {
      solvers.push_back(shape_solver(shape, budget));
      fs.push_back(solvers.back().f);
    }
    const auto conv = combine(fs, budget);
    const int b = conv.result().best_budget_up_to(budget);
    if (conv(b).is_infinite()) continue;

    Solution cand;
    cand.deleted = guessed;
    const auto split = conv.recover_split(b);
    for (std::size_t i = 0; i < shapes.size(); ++i)
      for (int t : solvers[i].witness(split[i]))
        for (int v : shapes[i].members[t]) cand.deleted.push_back(rest.new_to_old[v]);
    std::sort(cand.deleted.begin(), cand.deleted.end());
    cand.pairs = pairs_without(g, cand.deleted);
    if (cand.pairs != conv(b).value()) throw std::logic_error("max-leaf witness disagrees with its budget table");
    if (!have || cand.pairs < best.pairs || (cand.pairs == best.pairs && cand.deleted < best.deleted)) {
      best = std::move(cand);
      have = true;
    }
  }
  if (!have) throw std::logic_error("max-leaf solver found no feasible guess");
  best.optimal = true;
  return best;
}

}  // namespace cnc::maxleaf
