#include "cnc/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cnc/errors.hpp"

namespace cnc {

BigCount binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigCount r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Graph::Graph(int n) : adj_(n), weight_(n, 1), deletable_(n, 1) {
  if (n < 0) throw InputError("negative vertex count");
}

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

int Graph::add_vertex(Count weight) {
  if (weight < 1) throw InputError("vertex weight must be >= 1");
  adj_.emplace_back();
  weight_.push_back(weight);
  deletable_.push_back(1);
  return size() - 1;
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= size())
    throw InputError("vertex index " + std::to_string(v) + " out of range [0," + std::to_string(size()) + ")");
}

void Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw InputError("loop at vertex " + std::to_string(u + 1));
  auto& a = adj_[u];
  auto it = std::lower_bound(a.begin(), a.end(), v);
  if (it != a.end() && *it == v)
    throw InputError("duplicate edge " + std::to_string(u + 1) + " " + std::to_string(v + 1));
  a.insert(it, v);
  auto& b = adj_[v];
  b.insert(std::lower_bound(b.begin(), b.end(), u), u);
  ++edges_;
}

bool Graph::has_edge(int u, int v) const {
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

void Graph::set_weight(int v, Count w) {
  if (w < 1) throw InputError("vertex weight must be >= 1");
  weight_[v] = w;
}

Count Graph::total_weight() const { return std::accumulate(weight_.begin(), weight_.end(), Count{0}); }

bool Graph::unit_weights() const {
  return std::all_of(weight_.begin(), weight_.end(), [](Count w) { return w == 1; });
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edges_);
  for (int u = 0; u < size(); ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

Count weighted_pairs(const Graph& g, std::span<const char> removed) {
  const int n = g.size();
  DisjointSets ds(n);
  for (int u = 0; u < n; ++u) {
    if (removed[u]) continue;
    for (int v : g.neighbors(u))
      if (v > u && !removed[v]) ds.unite(u, v);
  }
  std::vector<Count> mass(n, 0);
  for (int v = 0; v < n; ++v)
    if (!removed[v]) mass[ds.find(v)] += g.weight(v);
  Count total = 0;
  for (Count m : mass) total += choose2(m);
  return total;
}

}  // namespace

std::vector<std::vector<int>> components(const Graph& g, std::span<const char> removed) {
  const int n = g.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (removed[s] || comp[s] != -1) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      out[id].push_back(u);
      for (int v : g.neighbors(u)) {
        if (removed[v] || comp[v] != -1) continue;
        comp[v] = id;
        stack.push_back(v);
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

std::vector<std::vector<int>> components(const Graph& g) {
  std::vector<char> none(g.size(), 0);
  return components(g, none);
}

Count pairs(const Graph& g) {
  std::vector<char> none(g.size(), 0);
  return weighted_pairs(g, none);
}

Count pairs_without(const Graph& g, std::span<const int> removed) {
  std::vector<char> mask(g.size(), 0);
  for (int v : removed) {
    if (v < 0 || v >= g.size()) throw InputError("deleted vertex out of range");
    mask[v] = 1;
  }
  return weighted_pairs(g, mask);
}

ExpandedGraph expand_weights(const Graph& g) {
  ExpandedGraph out;
  out.graph = Graph(g.size());
  out.origin.resize(g.size());
  std::iota(out.origin.begin(), out.origin.end(), 0);
  for (auto [u, v] : g.edges()) out.graph.add_edge(u, v);
  for (int v = 0; v < g.size(); ++v) {
    out.graph.set_deletable(v, g.deletable(v));
    int prev = v;
    for (Count i = 1; i < g.weight(v); ++i) {
      int t = out.graph.add_vertex();
      out.graph.add_edge(prev, t);
      out.origin.push_back(v);
      prev = t;
    }
  }
  return out;
}

InducedGraph induced_subgraph(const Graph& g, std::span<const int> keep) {
  InducedGraph out;
  out.old_to_new.assign(g.size(), -1);
  out.new_to_old.assign(keep.begin(), keep.end());
  std::sort(out.new_to_old.begin(), out.new_to_old.end());
  out.graph = Graph(static_cast<int>(out.new_to_old.size()));
  for (int i = 0; i < out.graph.size(); ++i) {
    int v = out.new_to_old[i];
    if (out.old_to_new[v] != -1) throw InputError("duplicate vertex in induced set");
    out.old_to_new[v] = i;
    out.graph.set_weight(i, g.weight(v));
    out.graph.set_deletable(i, g.deletable(v));
  }
  for (int i = 0; i < out.graph.size(); ++i)
    for (int w : g.neighbors(out.new_to_old[i])) {
      int j = out.old_to_new[w];
      if (j > i) out.graph.add_edge(i, j);
    }
  return out;
}

InducedGraph delete_vertices(const Graph& g, std::span<const int> s) {
  std::vector<char> gone(g.size(), 0);
  for (int v : s) {
    if (v < 0 || v >= g.size()) throw std::invalid_argument("deleted vertex out of range");
    if (!g.deletable(v)) throw std::invalid_argument("vertex " + std::to_string(v) + " is not deletable");
    gone[v] = 1;
  }
  std::vector<int> keep;
  for (int v = 0; v < g.size(); ++v)
    if (!gone[v]) keep.push_back(v);
  return induced_subgraph(g, keep);
}

ParameterReport parameter_report(const Graph& g) {
  ParameterReport r;
  r.components = static_cast<int>(components(g).size());
  r.fes = static_cast<std::int64_t>(g.edge_count()) - g.size() + r.components;
  for (int v = 0; v < g.size(); ++v) r.max_degree = std::max(r.max_degree, g.degree(v));
  r.expanded_n = g.total_weight();
  return r;
}

void verify_solution(const Instance& inst, const Solution& sol) {
  if (static_cast<int>(sol.deleted.size()) > inst.k)
    throw std::logic_error("solution deletes " + std::to_string(sol.deleted.size()) + " vertices, budget " +
                           std::to_string(inst.k));
  if (!std::is_sorted(sol.deleted.begin(), sol.deleted.end()) ||
      std::adjacent_find(sol.deleted.begin(), sol.deleted.end()) != sol.deleted.end())
    throw std::logic_error("solution deletion set is not a sorted set");
  for (int v : sol.deleted)
    if (v < 0 || v >= inst.graph.size() || !inst.graph.deletable(v))
      throw std::logic_error("solution deletes an invalid vertex");
  const Count actual = pairs_without(inst.graph, sol.deleted);
  if (actual != sol.pairs)
    throw std::logic_error("reported pairs " + std::to_string(sol.pairs) + " but recomputation gives " +
                           std::to_string(actual));
}

}  // namespace cnc
