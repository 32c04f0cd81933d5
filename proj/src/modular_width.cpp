#include "cnc/modular_width.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "cnc/errors.hpp"

namespace cnc::mw {

namespace {

// Smallest module of g[within] containing {u, v}, by closing under
// splitters (vertices adjacent to some but not all members).
std::vector<char> minimal_module(const Graph& g, const std::vector<int>& within, int u, int v) {
  std::vector<char> in(g.size(), 0);
  std::vector<int> members{u, v};
  in[u] = in[v] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int w : within) {
      if (in[w]) continue;
      const bool first = g.has_edge(w, members[0]);
      for (int m : members)
        if (g.has_edge(w, m) != first) {
          in[w] = 1;
          members.push_back(w);
          grew = true;
          break;
        }
    }
  }
  return in;
}

std::vector<std::vector<int>> complement_components(const Graph& g, const std::vector<int>& within) {
  std::vector<int> comp(g.size(), -1);
  std::vector<std::vector<int>> out;
  for (int s : within) {
    if (comp[s] != -1) continue;
    const int id = static_cast<int>(out.size());
    out.push_back({s});
    comp[s] = id;
    for (std::size_t i = 0; i < out[id].size(); ++i) {
      const int x = out[id][i];
      for (int y : within)
        if (comp[y] == -1 && y != x && !g.has_edge(x, y)) {
          comp[y] = id;
          out[id].push_back(y);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

MDNode decompose(const Graph& g, std::vector<int> within) {
  MDNode node;
  node.vertices = within;
  if (within.size() == 1) return node;

  std::vector<std::vector<int>> parts;
  std::vector<char> outside(g.size(), 1);
  for (int v : within) outside[v] = 0;
  parts = components(g, outside);
  if (parts.size() > 1) {
    node.kind = NodeKind::parallel;
  } else if (parts = complement_components(g, within); parts.size() > 1) {
    node.kind = NodeKind::series;
  } else {
    // G and its complement are connected: the maximal proper modules
    // partition the set, and u, v share one iff their closure is proper.
    node.kind = NodeKind::prime;
    parts.clear();
    std::vector<char> assigned(g.size(), 0);
    for (std::size_t i = 0; i < within.size(); ++i) {
      const int u = within[i];
      if (assigned[u]) continue;
      std::vector<int> part{u};
      assigned[u] = 1;
      for (std::size_t j = i + 1; j < within.size(); ++j) {
        const int v = within[j];
        if (assigned[v]) continue;
        auto m = minimal_module(g, within, u, v);
        bool proper = false;
        for (int w : within) proper |= !m[w];
        if (proper) {
          part.push_back(v);
          assigned[v] = 1;
        }
      }
      parts.push_back(part);
    }
  }
  std::sort(parts.begin(), parts.end());
  const int l = static_cast<int>(parts.size());
  node.quotient = Graph(l);
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j)
      if (g.has_edge(parts[i][0], parts[j][0])) node.quotient.add_edge(i, j);
  for (auto& p : parts) node.children.push_back(decompose(g, std::move(p)));
  return node;
}

struct Analysis {
  Count removed = 0;                          // |U|
  std::vector<int> isolated;                  // S'
  std::vector<std::vector<int>> groups;       // children forming each C_j
  std::vector<Count> group_size;              // |C_j|
};

Analysis analyze(const MDNode& b, unsigned long mask) {
  Analysis a;
  const Graph& h = b.quotient;
  const int l = h.size();
  std::vector<char> gone(l, 0);
  for (int i = 0; i < l; ++i)
    if (mask >> i & 1) {
      gone[i] = 1;
      a.removed += b.children[i].vertices.size();
    }
  for (int i = 0; i < l; ++i) {
    if (gone[i]) continue;
    bool alone = true;
    for (int j : h.neighbors(i)) alone &= gone[j] != 0;
    if (alone) a.isolated.push_back(i);
  }
  std::vector<char> skip = gone;
  for (int i : a.isolated) skip[i] = 1;
  a.groups = components(h, skip);
  for (const auto& grp : a.groups) {
    Count size = 0;
    for (int i : grp) size += b.children[i].vertices.size();
    a.group_size.push_back(size);
  }
  return a;
}

std::vector<BudgetFunction> parts_for(const MDNode& b, const std::vector<NodeTable>& children, const Analysis& a,
                                      int rest) {
  std::vector<BudgetFunction> fs;
  for (int i : a.isolated) fs.push_back(children[i].f);
  for (std::size_t j = 0; j < a.groups.size(); ++j) {
    const Count size = a.group_size[j];
    const Count mu = a.groups[j].size();
    if (mu < 2) throw std::logic_error("component of the quotient touches fewer than two modules");
    BudgetFunction f(rest);
    for (int t = 0; t <= rest && static_cast<Count>(t) <= size - mu; ++t) f[t] = Cost(choose2(size - t));
    fs.push_back(f);
  }
  (void)b;
  return fs;
}

struct Solved {
  NodeTable table;
  std::vector<Solved> kids;
};

Solved solve_node(const MDNode& b, int k, int max_width) {
  Solved s;
  if (static_cast<int>(b.children.size()) > max_width)
    throw CapExceeded("modular decomposition node has " + std::to_string(b.children.size()) + " children",
                      max_width);
  std::vector<NodeTable> tables;
  for (const auto& c : b.children) {
    s.kids.push_back(solve_node(c, k, max_width));
    tables.push_back(s.kids.back().table);
  }
  s.table = node_function(b, tables, k);
  return s;
}

void collect(const MDNode& b, const Solved& s, int budget, std::vector<int>& out) {
  if (b.kind == NodeKind::leaf) {
    if (budget != 0) throw std::logic_error("leaf asked for a deletion");
    return;
  }
  const long mask = s.table.choice.at(budget);
  if (mask < 0) throw std::logic_error("witness requested for an infinite entry");
  const Analysis a = analyze(b, static_cast<unsigned long>(mask));
  const int k = s.table.f.max_budget();
  const int rest = k - static_cast<int>(a.removed);
  std::vector<NodeTable> tables;
  for (const auto& kid : s.kids) tables.push_back(kid.table);
  const auto fs = parts_for(b, tables, a, rest);
  const auto split = combine(fs, rest).recover_split(budget - static_cast<int>(a.removed));

  for (std::size_t i = 0; i < b.children.size(); ++i)
    if (mask >> i & 1) out.insert(out.end(), b.children[i].vertices.begin(), b.children[i].vertices.end());
  std::size_t at = 0;
  for (int i : a.isolated) collect(b.children[i], s.kids[i], split[at++], out);
  for (const auto& grp : a.groups) {
    // Any deletions that spare one vertex per module keep C_j connected.
    std::vector<int> spare;
    for (int i : grp) spare.insert(spare.end(), b.children[i].vertices.begin() + 1, b.children[i].vertices.end());
    std::sort(spare.begin(), spare.end());
    out.insert(out.end(), spare.begin(), spare.begin() + split[at++]);
  }
}

void print_node(std::ostream& out, const MDNode& b, int depth) {
  out << std::string(2 * depth, ' ') << kind_name(b.kind);
  if (b.kind == NodeKind::leaf) {
    out << ' ' << b.vertices[0] + 1 << '\n';
    return;
  }
  out << " (" << b.children.size() << " children, " << b.vertices.size() << " vertices)\n";
  for (const auto& c : b.children) print_node(out, c, depth + 1);
}

}  // namespace

const char* kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::leaf: return "leaf";
    case NodeKind::parallel: return "parallel";
    case NodeKind::series: return "series";
    case NodeKind::prime: return "prime";
  }
  return "?";
}

MDNode modular_decomposition(const Graph& g) {
  if (g.size() == 0) throw std::invalid_argument("modular decomposition of the empty graph");
  std::vector<int> all(g.size());
  for (int v = 0; v < g.size(); ++v) all[v] = v;
  return decompose(g, all);
}

int width(const MDNode& root) {
  int w = static_cast<int>(root.children.size());
  for (const auto& c : root.children) w = std::max(w, width(c));
  return w;
}

Graph reconstruct(const MDNode& root, int n) {
  Graph g(n);
  auto rec = [&](auto&& self, const MDNode& b) -> void {
    for (auto [i, j] : b.quotient.edges())
      for (int u : b.children[i].vertices)
        for (int v : b.children[j].vertices) g.add_edge(u, v);
    for (const auto& c : b.children) self(self, c);
  };
  rec(rec, root);
  return g;
}

void print_tree(std::ostream& out, const MDNode& root) { print_node(out, root, 0); }

NodeTable node_function(const MDNode& b, const std::vector<NodeTable>& children, int k) {
  NodeTable t;
  t.f = BudgetFunction(k);
  t.choice.assign(k + 1, -1);
  if (b.kind == NodeKind::leaf) {
    t.f[0] = Cost(0);
    t.choice[0] = 0;
    return t;
  }
  const int l = static_cast<int>(b.children.size());
  const Count size = b.vertices.size();
  for (unsigned long mask = 0; mask < (1ul << l); ++mask) {
    const Analysis a = analyze(b, mask);
    const int rest = k - static_cast<int>(a.removed);
    if (rest < 0) continue;
    const auto fs = parts_for(b, children, a, rest);
    const auto conv = combine(fs, rest);
    for (int kk = static_cast<int>(a.removed); kk <= k && static_cast<Count>(kk) < size; ++kk) {
      const Cost v = conv(kk - static_cast<int>(a.removed));
      if (v < t.f(kk)) {
        t.f[kk] = v;
        t.choice[kk] = static_cast<long>(mask);
      }
    }
  }
  return t;
}

Solution solve(const Instance& inst, const Options& options) {
  const Graph& g = inst.graph;
  if (!g.unit_weights()) throw InputError("modular-width solver requires unit weights");
  for (int v = 0; v < g.size(); ++v)
    if (!g.deletable(v)) throw InputError("modular-width solver requires every vertex deletable");
  Solution sol;
  sol.optimal = true;
  if (g.size() == 0) return sol;
  const int k = std::min(inst.k, g.size());
  const MDNode root = modular_decomposition(g);
  const Solved solved = solve_node(root, k, options.max_width);
  const int budget = solved.table.f.best_budget_up_to(k);
  collect(root, solved, budget, sol.deleted);
  std::sort(sol.deleted.begin(), sol.deleted.end());
  sol.pairs = pairs_without(g, sol.deleted);
  if (Cost(sol.pairs) != solved.table.f(budget))
    throw std::logic_error("modular-width witness disagrees with its table entry");
  return sol;
}

}  // namespace cnc::mw
