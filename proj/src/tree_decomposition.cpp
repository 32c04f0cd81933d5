#include "cnc/tree_decomposition.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "cnc/errors.hpp"

namespace cnc {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ": " + msg);
}

long long read_int(std::istringstream& ss, int line, const char* what) {
  long long v;
  if (!(ss >> v)) fail(line, std::string("expected ") + what);
  return v;
}

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

int NiceTreeDecomposition::width() const {
  int w = -1;
  for (const auto& node : nodes) w = std::max(w, static_cast<int>(node.bag.size()) - 1);
  return w;
}

TreeDecomposition read_td(std::istream& in) {
  TreeDecomposition td;
  bool header = false;
  long long max_bag = 0, n = 0;
  std::vector<char> seen;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    std::istringstream ss(text);
    std::string tag;
    if (!(ss >> tag) || tag == "c") continue;
    if (tag == "s") {
      if (header) fail(line, "duplicate header");
      std::string kind;
      if (!(ss >> kind) || kind != "td") fail(line, "header must be 's td <bags> <max bag> <n>'");
      const long long nb = read_int(ss, line, "bag count");
      max_bag = read_int(ss, line, "max bag size");
      n = read_int(ss, line, "vertex count");
      if (nb < 0 || max_bag < 0 || n < 0 || nb > (1LL << 24) || n > (1LL << 30)) fail(line, "bad header values");
      td.bags.resize(nb);
      seen.assign(nb, 0);
      header = true;
    } else if (tag == "b") {
      if (!header) fail(line, "bag before header");
      const long long id = read_int(ss, line, "bag id");
      if (id < 1 || id > static_cast<long long>(td.bags.size())) fail(line, "bag id out of range");
      if (seen[id - 1]) fail(line, "duplicate bag " + std::to_string(id));
      seen[id - 1] = 1;
      auto& bag = td.bags[id - 1];
      long long v;
      while (ss >> v) {
        if (v < 1 || v > n) fail(line, "vertex " + std::to_string(v) + " out of range");
        bag.push_back(static_cast<int>(v - 1));
      }
      if (!ss.eof()) fail(line, "bad vertex token");
      std::sort(bag.begin(), bag.end());
      if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) fail(line, "repeated vertex in bag");
      if (static_cast<long long>(bag.size()) > max_bag) fail(line, "bag larger than announced maximum");
    } else {
      if (!header) fail(line, "edge before header");
      std::istringstream es(text);
      const long long a = read_int(es, line, "bag id");
      const long long b = read_int(es, line, "bag id");
      std::string rest;
      if (es >> rest) fail(line, "trailing token '" + rest + "'");
      const auto nb = static_cast<long long>(td.bags.size());
      if (a < 1 || b < 1 || a > nb || b > nb) fail(line, "tree edge endpoint out of range");
      td.edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
    }
  }
  if (!header) throw InputError("missing 's td' header");
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw InputError("bag " + std::to_string(i + 1) + " never defined");
  return td;
}

TreeDecomposition read_td(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return read_td(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_td(std::ostream& out, const TreeDecomposition& td, int n) {
  out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i + 1;
    for (int v : td.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [a, b] : td.edges) out << a + 1 << ' ' << b + 1 << '\n';
}

void validate(const TreeDecomposition& td, const Graph& g) {
  const int n = g.size();
  const int nb = static_cast<int>(td.bags.size());
  if (nb == 0) {
    if (n > 0) throw InputError("tree decomposition has no bags");
    return;
  }
  if (static_cast<int>(td.edges.size()) != nb - 1) throw InputError("tree decomposition is not a tree (edge count)");
  DisjointSets tree(nb);
  for (auto [a, b] : td.edges) {
    if (a < 0 || b < 0 || a >= nb || b >= nb) throw InputError("tree edge out of range");
    if (!tree.unite(a, b)) throw InputError("tree decomposition contains a cycle");
  }

  std::vector<std::vector<int>> where(n);
  for (int i = 0; i < nb; ++i)
    for (int v : td.bags[i]) {
      if (v < 0 || v >= n) throw InputError("bag " + std::to_string(i + 1) + " holds an unknown vertex");
      where[v].push_back(i);
    }
  for (int v = 0; v < n; ++v)
    if (where[v].empty()) throw InputError("vertex " + std::to_string(v + 1) + " is in no bag");

  for (auto [u, v] : g.edges()) {
    std::vector<int> both;
    std::set_intersection(where[u].begin(), where[u].end(), where[v].begin(), where[v].end(),
                          std::back_inserter(both));
    if (both.empty())
      throw InputError("edge " + std::to_string(u + 1) + " " + std::to_string(v + 1) + " is not covered by any bag");
  }

  // Occurrences of v form a subtree iff they span |where[v]| - 1 tree edges.
  std::vector<std::vector<char>> in_bag(nb);
  for (int i = 0; i < nb; ++i) {
    in_bag[i].assign(n, 0);
    for (int v : td.bags[i]) in_bag[i][v] = 1;
  }
  std::vector<int> inner(n, 0);
  for (auto [a, b] : td.edges)
    for (int v : td.bags[a])
      if (in_bag[b][v]) ++inner[v];
  for (int v = 0; v < n; ++v)
    if (inner[v] != static_cast<int>(where[v].size()) - 1)
      throw InputError("bags containing vertex " + std::to_string(v + 1) + " are not connected");
}

TreeDecomposition heuristic_td(const Graph& g) {
  const int n = g.size();
  TreeDecomposition td;
  if (n == 0) {
    td.bags.push_back({});
    return td;
  }
  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<char> done(n, 0);
  std::vector<int> order, position(n, -1);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long best_fill = 0;
    for (int v = 0; v < n; ++v) {
      if (done[v]) continue;
      long fill = 0;
      for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
        for (auto b = std::next(a); b != adj[v].end(); ++b)
          if (!adj[*a].count(*b)) ++fill;
      if (best < 0 || fill < best_fill || (fill == best_fill && adj[v].size() < adj[best].size())) {
        best = v;
        best_fill = fill;
      }
    }
    const int v = best;
    std::vector<int> bag(adj[v].begin(), adj[v].end());
    for (std::size_t i = 0; i < bag.size(); ++i)
      for (std::size_t j = i + 1; j < bag.size(); ++j) {
        adj[bag[i]].insert(bag[j]);
        adj[bag[j]].insert(bag[i]);
      }
    for (int u : bag) adj[u].erase(v);
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    done[v] = 1;
    position[v] = step;
    order.push_back(v);
    td.bags.push_back(std::move(bag));
  }
  // Bag i belongs to order[i]; its parent is the bag of the neighbor
  // eliminated next, or simply the following bag when it has none.
  for (int i = 0; i + 1 < n; ++i) {
    int parent = n;
    for (int u : td.bags[i])
      if (u != order[i]) parent = std::min(parent, position[u]);
    if (parent == n) parent = i + 1;
    td.edges.emplace_back(i, parent);
  }
  return td;
}

NiceTreeDecomposition nicify(const TreeDecomposition& td) {
  NiceTreeDecomposition nice;
  auto push = [&](NiceNode node) {
    int h = -1;
    for (int c : node.children) h = std::max(h, nice.nodes[c].height);
    node.height = h + 1;
    nice.nodes.push_back(std::move(node));
    return static_cast<int>(nice.nodes.size()) - 1;
  };
  auto step = [&](int child, NiceKind kind, int v) {
    NiceNode node;
    node.kind = kind;
    node.vertex = v;
    node.children = {child};
    node.bag = nice.nodes[child].bag;
    if (kind == NiceKind::introduce) {
      node.bag.insert(std::lower_bound(node.bag.begin(), node.bag.end(), v), v);
    } else {
      node.bag.erase(std::find(node.bag.begin(), node.bag.end(), v));
    }
    return push(std::move(node));
  };
  // Walks from a node whose bag is `from` to one whose bag is `to`.
  auto morph = [&](int x, const std::vector<int>& to) {
    const std::vector<int> from = nice.nodes[x].bag;
    for (int v : from)
      if (!std::binary_search(to.begin(), to.end(), v)) x = step(x, NiceKind::forget, v);
    for (int v : to)
      if (!std::binary_search(from.begin(), from.end(), v)) x = step(x, NiceKind::introduce, v);
    return x;
  };

  if (td.bags.empty()) {
    push(NiceNode{});
    return nice;
  }
  const int nb = static_cast<int>(td.bags.size());
  std::vector<std::vector<int>> tree(nb);
  for (auto [a, b] : td.edges) {
    tree[a].push_back(b);
    tree[b].push_back(a);
  }

  std::function<int(int, int)> build = [&](int t, int parent) {
    std::vector<int> subs;
    for (int c : tree[t])
      if (c != parent) subs.push_back(morph(build(c, t), td.bags[t]));
    if (subs.empty()) return morph(push(NiceNode{}), td.bags[t]);
    int x = subs[0];
    for (std::size_t i = 1; i < subs.size(); ++i) {
      NiceNode join;
      join.kind = NiceKind::join;
      join.children = {x, subs[i]};
      join.bag = td.bags[t];
      x = push(std::move(join));
    }
    return x;
  };
  morph(build(0, -1), {});
  return nice;
}

void check_nice(const NiceTreeDecomposition& nice) {
  auto bad = [](std::size_t x, const std::string& msg) {
    throw std::logic_error("nice decomposition node " + std::to_string(x) + ": " + msg);
  };
  if (nice.nodes.empty()) throw std::logic_error("nice decomposition is empty");
  if (!nice.nodes.back().bag.empty()) bad(nice.nodes.size() - 1, "root bag not empty");
  std::vector<int> parents(nice.nodes.size(), 0);
  for (std::size_t x = 0; x < nice.nodes.size(); ++x) {
    const auto& node = nice.nodes[x];
    if (!std::is_sorted(node.bag.begin(), node.bag.end())) bad(x, "bag not sorted");
    int h = -1;
    for (int c : node.children) {
      if (c < 0 || static_cast<std::size_t>(c) >= x) bad(x, "child not stored before parent");
      ++parents[c];
      h = std::max(h, nice.nodes[c].height);
    }
    if (node.height != h + 1) bad(x, "height mismatch");
    switch (node.kind) {
      case NiceKind::leaf:
        if (!node.children.empty() || !node.bag.empty()) bad(x, "leaf must be empty");
        break;
      case NiceKind::introduce:
      case NiceKind::forget: {
        if (node.children.size() != 1) bad(x, "needs one child");
        auto expected = nice.nodes[node.children[0]].bag;
        const bool had = std::binary_search(expected.begin(), expected.end(), node.vertex);
        if (node.kind == NiceKind::introduce) {
          if (had) bad(x, "introduced vertex already present");
          expected.insert(std::lower_bound(expected.begin(), expected.end(), node.vertex), node.vertex);
        } else {
          if (!had) bad(x, "forgotten vertex not present");
          expected.erase(std::find(expected.begin(), expected.end(), node.vertex));
        }
        if (expected != node.bag) bad(x, "bag does not differ by exactly the vertex");
        break;
      }
      case NiceKind::join:
        if (node.children.size() != 2) bad(x, "join needs two children");
        for (int c : node.children)
          if (nice.nodes[c].bag != node.bag) bad(x, "join bags differ");
        break;
    }
  }
  for (std::size_t x = 0; x + 1 < nice.nodes.size(); ++x)
    if (parents[x] != 1) bad(x, "not a tree");
}

}  // namespace cnc
