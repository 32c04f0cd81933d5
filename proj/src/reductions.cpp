#include "cnc/reductions.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <functional>
#include <istream>
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

void expect_end(std::istringstream& ss, int line) {
  std::string rest;
  if (ss >> rest) fail(line, "trailing token '" + rest + "'");
}

template <typename Parse>
auto read_file(const std::string& path, Parse parse) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return parse(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Pair (i, j), i < j, in lexicographic order.
int pair_index(int i, int j, int k) { return i * k - i * (i + 1) / 2 + (j - i - 1); }

std::vector<Count> subset_sums(const std::vector<Count>& items) {
  Count total = 0;
  for (Count a : items) total += a;
  std::vector<char> reach(total + 1, 0);
  reach[0] = 1;
  for (Count a : items)
    for (Count s = total; s >= a && s > 0; --s)
      if (reach[s - a]) reach[s] = 1;
  std::vector<Count> out;
  for (Count s = 0; s <= total; ++s)
    if (reach[s]) out.push_back(s);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

RubpInstance read_rubp(std::istream& in) {
  RubpInstance r;
  bool header = false;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    std::istringstream ss(text);
    std::string tag;
    if (!(ss >> tag) || tag == "c") continue;
    if (tag == "r") {
      if (header) fail(line, "duplicate header");
      const long long k = read_int(ss, line, "bin count");
      expect_end(ss, line);
      if (k < 2 || k > 64) fail(line, "bin count must lie in [2, 64]");
      r.k = static_cast<int>(k);
      header = true;
    } else if (tag == "a") {
      if (!header) fail(line, "item before header");
      const long long value = read_int(ss, line, "value");
      const long long b1 = read_int(ss, line, "bin");
      const long long b2 = read_int(ss, line, "bin");
      expect_end(ss, line);
      if (value < 1 || value > 1'000'000) fail(line, "item value must lie in [1, 10^6]");
      if (b1 < 1 || b2 < 1 || b1 > r.k || b2 > r.k) fail(line, "bin out of range");
      if (b1 == b2) fail(line, "item bins must differ");
      r.values.push_back(static_cast<Count>(value));
      r.bins.emplace_back(static_cast<int>(std::min(b1, b2) - 1), static_cast<int>(std::max(b1, b2) - 1));
    } else {
      fail(line, "unknown line tag '" + tag + "'");
    }
  }
  if (!header) throw InputError("missing 'r' header");
  return r;
}

RubpInstance read_rubp(const std::string& path) {
  return read_file(path, [](std::istream& in) { return read_rubp(in); });
}

void write_rubp(std::ostream& out, const RubpInstance& r) {
  out << "r " << r.k << '\n';
  for (std::size_t a = 0; a < r.values.size(); ++a)
    out << "a " << r.values[a] << ' ' << r.bins[a].first + 1 << ' ' << r.bins[a].second + 1 << '\n';
}

RubpBruteResult rubp_brute(const RubpInstance& r, std::uint64_t cap) {
  const std::size_t n = r.values.size();
  if (n >= 63 || (std::uint64_t{1} << n) > cap) throw CapExceeded("RUBP brute force over 2^" + std::to_string(n), cap);
  Count total = 0;
  for (Count a : r.values) total += a;
  RubpBruteResult result;
  if (r.k < 1 || total % r.k != 0) return result;
  const Count B = total / r.k;

  // Larger items first prune earlier.
  std::vector<int> order(n);
  for (std::size_t a = 0; a < n; ++a) order[a] = static_cast<int>(a);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return r.values[a] > r.values[b]; });
  std::vector<Count> load(r.k, 0);
  std::vector<int> assignment(n, -1);
  std::function<bool(std::size_t)> place = [&](std::size_t t) {
    if (t == n) return std::all_of(load.begin(), load.end(), [&](Count l) { return l == B; });
    const int a = order[t];
    for (int bin : {r.bins[a].first, r.bins[a].second}) {
      if (load[bin] + r.values[a] > B) continue;
      load[bin] += r.values[a];
      assignment[a] = bin;
      if (place(t + 1)) return true;
      load[bin] -= r.values[a];
    }
    return false;
  };
  if (place(0)) {
    result.yes = true;
    result.assignment = assignment;
  }
  return result;
}

RubpConstants rubp_constants(const RubpInstance& r) {
  if (r.k < 2) throw InputError("RUBP needs at least two bins");
  Count total = 0;
  for (Count a : r.values) total += a;
  if (total == 0 || total % r.k != 0) throw InputError("sum of items must be a positive multiple of k");
  RubpConstants c;
  const Count k = r.k;
  c.B = total / k;
  c.c = 6 * k * k;
  c.M = k * c.B + 1;
  const long double estimate = 36.0L * k * k * k * k * c.B * c.M * k;
  if (estimate > 1e17L) throw CapExceeded("RUBP constants overflow", static_cast<std::uint64_t>(1e17));
  c.L = 36 * k * k * k * k * c.B * c.M;
  c.T = c.L + (k - 1) * 2 * c.B * c.M + c.B;
  c.k_prime = static_cast<int>(2 * choose2(k));
  c.x = k * choose2(c.T) + 2 * choose2(k) * choose2(c.M - 1);
  c.expanded_vertices = k * c.T + 2 * choose2(k) * c.M;
  return c;
}

RubpReduction reduce_rubp(const RubpInstance& r, Count max_vertices) {
  RubpReduction red;
  red.source = r;
  red.constants = rubp_constants(r);
  const auto& K = red.constants;
  if (K.expanded_vertices > max_vertices)
    throw CapExceeded("reduced graph with " + std::to_string(K.expanded_vertices) + " vertices", max_vertices);
  const int k = r.k;

  std::vector<std::vector<Count>> items(choose2(k));
  for (std::size_t a = 0; a < r.values.size(); ++a)
    items[pair_index(r.bins[a].first, r.bins[a].second, k)].push_back(r.values[a]);

  Graph& g = red.weighted;
  auto add = [&](Count weight, std::string kind, std::vector<int> index) {
    red.roles.push_back({std::move(kind), std::move(index)});
    return g.add_vertex(weight);
  };

  red.cliques.resize(k);
  for (int i = 0; i < k; ++i) {
    for (Count q = 0; q < K.c; ++q) red.cliques[i].push_back(add(K.L / K.c, "clique", {i + 1, static_cast<int>(q)}));
    for (std::size_t a = 0; a < red.cliques[i].size(); ++a)
      for (std::size_t b = a + 1; b < red.cliques[i].size(); ++b) g.add_edge(red.cliques[i][a], red.cliques[i][b]);
  }
  auto attach = [&](int v, int bin) {
    for (int u : red.cliques[bin]) g.add_edge(u, v);
  };

  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      RubpPair p;
      p.i = i;
      p.j = j;
      const auto& h = items[pair_index(i, j, k)];
      for (Count a : h) p.load += a;
      if (p.load > 2 * K.B)
        throw InputError("bins " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                         " carry more than 2B; the instance is trivially a no-instance");
      p.sums = subset_sums(h);
      const int ij[2] = {i + 1, j + 1};

      const Count u_len = 4 * K.B - p.sums.size() + 2;
      for (Count q = 0; q < u_len; ++q) {
        p.u.push_back(add(K.M, "u", {ij[0], ij[1], static_cast<int>(q)}));
        if (q > 0) g.add_edge(p.u[q - 1], p.u[q]);
      }
      attach(p.u.front(), i);
      attach(p.u.back(), j);

      // sigma_q sits between s_q and s_{q+1}; other s vertices chain directly.
      std::vector<char> is_sum(p.load + 1, 0);
      for (Count q : p.sums) is_sum[q] = 1;
      int prev = -1;
      for (Count q = 0; q <= p.load; ++q) {
        if (q > 0) {
          const int s = add(1, "s", {ij[0], ij[1], static_cast<int>(q)});
          p.s.push_back(s);
          if (prev >= 0) g.add_edge(prev, s);
          prev = s;
        }
        if (is_sum[q]) {
          const int sigma = add(K.M, "sigma", {ij[0], ij[1], static_cast<int>(q)});
          p.sigma.push_back(sigma);
          if (prev >= 0) g.add_edge(prev, sigma);
          prev = sigma;
        }
      }
      attach(p.sigma.front(), i);
      attach(p.sigma.back(), j);
      red.pairs.push_back(std::move(p));
    }

  ExpandedGraph expanded = expand_weights(g);
  if (static_cast<Count>(expanded.graph.size()) != K.expanded_vertices)
    throw std::logic_error("reduced graph has " + std::to_string(expanded.graph.size()) + " vertices, formula gives " +
                           std::to_string(K.expanded_vertices));
  red.instance = {std::move(expanded.graph), K.k_prime, K.x};
  red.origin = std::move(expanded.origin);
  return red;
}

Solution rubp_witness(const RubpReduction& red, const std::vector<int>& assignment) {
  const auto& r = red.source;
  const Count B = red.constants.B;
  if (assignment.size() != r.values.size()) throw InputError("assignment must give one bin per item");
  std::vector<Count> load(r.k, 0);
  for (std::size_t a = 0; a < assignment.size(); ++a) {
    if (assignment[a] != r.bins[a].first && assignment[a] != r.bins[a].second)
      throw InputError("item " + std::to_string(a + 1) + " placed outside its bins");
    load[assignment[a]] += r.values[a];
  }
  for (int i = 0; i < r.k; ++i)
    if (load[i] != B) throw InputError("bin " + std::to_string(i + 1) + " does not sum to B");

  Solution sol;
  for (const auto& p : red.pairs) {
    Count toward_i = 0;
    for (std::size_t a = 0; a < assignment.size(); ++a)
      if (r.bins[a] == std::make_pair(p.i, p.j) && assignment[a] == p.i) toward_i += r.values[a];
    const auto at = std::lower_bound(p.sums.begin(), p.sums.end(), toward_i);
    const Count below = static_cast<Count>(at - p.sums.begin());
    sol.deleted.push_back(p.sigma[at - p.sums.begin()]);
    sol.deleted.push_back(p.u[2 * B - below]);
  }
  std::sort(sol.deleted.begin(), sol.deleted.end());
  sol.pairs = pairs_without(red.instance.graph, sol.deleted);
  if (sol.pairs > red.instance.x)
    throw std::logic_error("RUBP witness leaves " + std::to_string(sol.pairs) + " pairs, above x");
  return sol;
}

Count rubp_restricted_min(const RubpReduction& red, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (const auto& p : red.pairs) {
    total *= p.u.size() * p.sigma.size();
    if (total > cap) throw CapExceeded("restricted RUBP search", cap);
  }
  Count best = 0;
  bool found = false;
  std::vector<int> chosen;
  std::function<void(std::size_t)> go = [&](std::size_t t) {
    if (t == red.pairs.size()) {
      const Count value = pairs_without(red.instance.graph, chosen);
      if (!found || value < best) best = value;
      found = true;
      return;
    }
    for (int u : red.pairs[t].u)
      for (int s : red.pairs[t].sigma) {
        chosen.push_back(u);
        chosen.push_back(s);
        go(t + 1);
        chosen.resize(chosen.size() - 2);
      }
  };
  go(0);
  return best;
}

RubpParamReport check_rubp_param_bounds(const RubpReduction& red) {
  const Graph& g = red.instance.graph;
  const Count k = red.source.k, c = red.constants.c;
  RubpParamReport rep;
  rep.fes = parameter_report(g).fes;
  rep.fes_bound = k * choose2(c) + 4 * choose2(k) * c;
  rep.clique_degree_expected = static_cast<int>(c + 2 * (k - 1));

  const int original = red.weighted.size();
  std::vector<char> in_clique(g.size(), 0);
  rep.clique_degree_min = g.size();
  for (const auto& clique : red.cliques)
    for (int v : clique) {
      in_clique[v] = 1;
      rep.clique_degree_min = std::min(rep.clique_degree_min, g.degree(v));
      rep.clique_degree_max = std::max(rep.clique_degree_max, g.degree(v));
    }

  // F: edges inside cliques and from cliques to path endpoints. The
  // expanded remainder must be a forest; the weighted one a caterpillar forest
  // (pendant weight paths would otherwise count as legs of length > 1).
  auto without_f = [&](const Graph& h) {
    Graph rest(h.size());
    for (auto [u, v] : h.edges()) {
      const bool f = u < original && v < original && (in_clique[u] || in_clique[v]);
      if (!f) rest.add_edge(u, v);
    }
    return rest;
  };
  rep.remainder_fes = parameter_report(without_f(g)).fes;
  const Graph rest = without_f(red.weighted);
  rep.caterpillar = parameter_report(rest).fes == 0;
  for (int v = 0; v < rest.size() && rep.caterpillar; ++v) {
    if (rest.degree(v) < 2) continue;
    int spine = 0;
    for (int u : rest.neighbors(v))
      if (rest.degree(u) >= 2) ++spine;
    if (spine > 2) rep.caterpillar = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------

McInstance read_mc(std::istream& in) {
  McInstance m;
  bool header = false;
  std::set<std::array<int, 4>> seen;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    std::istringstream ss(text);
    std::string tag;
    if (!(ss >> tag) || tag == "c") continue;
    if (tag == "m") {
      if (header) fail(line, "duplicate header");
      const long long k = read_int(ss, line, "class count");
      const long long n = read_int(ss, line, "class size");
      expect_end(ss, line);
      if (k < 1 || k > 64 || n < 1 || n > (1 << 20)) fail(line, "bad class count or size");
      m.k = static_cast<int>(k);
      m.n = static_cast<int>(n);
      header = true;
    } else if (tag == "e") {
      if (!header) fail(line, "edge before header");
      long long v[4];
      for (auto& x : v) x = read_int(ss, line, "class or index");
      expect_end(ss, line);
      if (v[0] < 1 || v[2] < 1 || v[0] > m.k || v[2] > m.k) fail(line, "class out of range");
      if (v[1] < 1 || v[3] < 1 || v[1] > m.n || v[3] > m.n) fail(line, "index out of range");
      if (v[0] == v[2]) fail(line, "edge inside a color class");
      if (v[0] > v[2]) {
        std::swap(v[0], v[2]);
        std::swap(v[1], v[3]);
      }
      McEdge e{static_cast<int>(v[0] - 1), static_cast<int>(v[1] - 1), static_cast<int>(v[2] - 1),
               static_cast<int>(v[3] - 1)};
      if (!seen.insert({e.class_a, e.index_a, e.class_b, e.index_b}).second) fail(line, "duplicate edge");
      m.edges.push_back(e);
    } else {
      fail(line, "unknown line tag '" + tag + "'");
    }
  }
  if (!header) throw InputError("missing 'm' header");
  return m;
}

McInstance read_mc(const std::string& path) {
  return read_file(path, [](std::istream& in) { return read_mc(in); });
}

void write_mc(std::ostream& out, const McInstance& m) {
  out << "m " << m.k << ' ' << m.n << '\n';
  for (const auto& e : m.edges)
    out << "e " << e.class_a + 1 << ' ' << e.index_a + 1 << ' ' << e.class_b + 1 << ' ' << e.index_b + 1 << '\n';
}

namespace {

bool is_clique(const McInstance& m, const std::vector<int>& pick) {
  std::set<std::array<int, 4>> edges;
  for (const auto& e : m.edges) edges.insert({e.class_a, e.index_a, e.class_b, e.index_b});
  for (int a = 0; a < m.k; ++a)
    for (int b = a + 1; b < m.k; ++b)
      if (!edges.count({a, pick[a], b, pick[b]})) return false;
  return true;
}

}  // namespace

McBruteResult mc_brute(const McInstance& m, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (int i = 0; i < m.k; ++i) {
    total *= m.n;
    if (total > cap) throw CapExceeded("multicolored clique brute force", cap);
  }
  McBruteResult result;
  std::vector<int> pick(m.k, 0);
  while (true) {
    if (is_clique(m, pick)) {
      result.yes = true;
      result.clique = pick;
      return result;
    }
    int i = m.k - 1;
    while (i >= 0 && ++pick[i] == m.n) pick[i--] = 0;
    if (i < 0) return result;
  }
}

McReduction reduce_mc(const McInstance& m) {
  if (m.n < 2 || (m.n & (m.n - 1)) != 0) throw InputError("class size must be a power of two, at least 2");
  if (m.k < 1) throw InputError("need at least one color class");
  McReduction red;
  red.source = m;
  while ((1 << red.log_n) < m.n) ++red.log_n;
  const int lg = red.log_n;
  red.A = m.edges.size() + 1;

  Graph g;
  auto add = [&](std::string kind, std::vector<int> index) {
    red.roles.push_back({std::move(kind), std::move(index)});
    return g.add_vertex();
  };
  for (int i = 0; i < m.k; ++i)
    for (int w = 0; w < lg; ++w)
      for (int z = 0; z < 2; ++z) red.core.push_back(add("core", {i + 1, w + 1, z}));
  for (int q = 0; q < m.k * lg + 1; ++q) red.clique.push_back(add("clique", {q + 1}));
  std::vector<int> dense = red.core;
  dense.insert(dense.end(), red.clique.begin(), red.clique.end());
  for (std::size_t a = 0; a < dense.size(); ++a)
    for (std::size_t b = a + 1; b < dense.size(); ++b) g.add_edge(dense[a], dense[b]);

  auto core = [&](int i, int w, int z) { return red.core[(i * lg + w) * 2 + z]; };
  for (std::size_t e = 0; e < m.edges.size(); ++e) {
    const auto& edge = m.edges[e];
    const int h = add("adjacency", {static_cast<int>(e) + 1});
    red.adjacency.push_back(h);
    for (int w = 0; w < lg; ++w) {
      g.add_edge(h, core(edge.class_a, w, (edge.index_a >> w) & 1));
      g.add_edge(h, core(edge.class_b, w, (edge.index_b >> w) & 1));
    }
  }
  for (int i1 = 0; i1 < m.k; ++i1)
    for (int i2 = i1 + 1; i2 < m.k; ++i2)
      for (int w1 = 0; w1 < lg; ++w1)
        for (int w2 = 0; w2 < lg; ++w2)
          for (int z1 = 0; z1 < 2; ++z1)
            for (int z2 = 0; z2 < 2; ++z2) {
              for (Count a = 0; a < red.A; ++a) {
                const int d = add("dummy", {i1 + 1, i2 + 1, w1 + 1, w2 + 1, z1, z2, static_cast<int>(a)});
                g.add_edge(d, core(i1, w1, z1));
                g.add_edge(d, core(i2, w2, z2));
              }
              ++red.dummy_groups;
            }

  const Count k_prime = static_cast<Count>(m.k) * lg;
  const Count pairs_k = choose2(m.k);
  const Count isolated = pairs_k + red.A * pairs_k * lg * lg;
  const Count n_prime = g.size();
  red.instance = {std::move(g), static_cast<int>(k_prime), choose2(n_prime - k_prime - isolated)};
  return red;
}

Solution mc_witness(const McReduction& red, const std::vector<int>& clique) {
  const auto& m = red.source;
  if (static_cast<int>(clique.size()) != m.k) throw InputError("clique must pick one vertex per class");
  for (int v : clique)
    if (v < 0 || v >= m.n) throw InputError("clique index out of range");
  if (!is_clique(m, clique)) throw InputError("chosen vertices do not form a clique");
  Solution sol;
  for (int i = 0; i < m.k; ++i)
    for (int w = 0; w < red.log_n; ++w) sol.deleted.push_back(red.core[(i * red.log_n + w) * 2 + ((clique[i] >> w) & 1)]);
  std::sort(sol.deleted.begin(), sol.deleted.end());
  sol.pairs = pairs_without(red.instance.graph, sol.deleted);
  if (sol.pairs > red.instance.x)
    throw std::logic_error("clique witness leaves " + std::to_string(sol.pairs) + " pairs, above x");
  return sol;
}

}  // namespace cnc
