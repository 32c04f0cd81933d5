#include "cnc/clique_width.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#include "cnc/errors.hpp"

namespace cnc::cw {

namespace {

constexpr int kMaxLabel = 32;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expression run() {
    parse_node();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    expr_.vertices = next_vertex_;
    return std::move(expr_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("expression: " + what + " at offset " + std::to_string(pos_));
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  int label() {
    skip_space();
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > kMaxLabel) break;
      ++pos_;
    }
    if (pos_ == start) fail("expected a label");
    if (value < 1 || value > kMaxLabel) fail("label out of range [1.." + std::to_string(kMaxLabel) + "]");
    return static_cast<int>(value);
  }

  int parse_node() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char tag = text_[pos_++];
    ExprNode node;
    expect('(');
    switch (tag) {
      case 'v':
        node.op = Op::intro;
        node.a = label();
        node.vertex = next_vertex_++;
        break;
      case 'u':
        node.op = Op::join_union;
        node.kids.push_back(parse_node());
        expect(',');
        node.kids.push_back(parse_node());
        break;
      case 'j':
      case 'r':
        node.op = tag == 'j' ? Op::join : Op::rename;
        node.a = label();
        expect(',');
        node.b = label();
        if (node.a == node.b) fail("operation needs two distinct labels");
        expect(',');
        node.kids.push_back(parse_node());
        break;
      default:
        --pos_;
        fail(std::string("unknown operation '") + tag + "'");
    }
    expect(')');
    expr_.nodes.push_back(std::move(node));
    return static_cast<int>(expr_.nodes.size()) - 1;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int next_vertex_ = 0;
  Expression expr_;
};

// Evaluates bottom-up; members[x] = vertices of the subexpression at x.
// With `strict`, a join that meets an existing i-j edge is an error.
LabeledGraph run_expression(const Expression& e, bool strict) {
  LabeledGraph out;
  out.graph = Graph(e.vertices);
  out.label.assign(e.vertices, 0);
  std::vector<std::vector<int>> members(e.nodes.size());
  for (std::size_t x = 0; x < e.nodes.size(); ++x) {
    const ExprNode& node = e.nodes[x];
    switch (node.op) {
      case Op::intro:
        out.label[node.vertex] = node.a;
        members[x] = {node.vertex};
        break;
      case Op::join_union:
        members[x] = std::move(members[node.kids[0]]);
        members[x].insert(members[x].end(), members[node.kids[1]].begin(), members[node.kids[1]].end());
        break;
      case Op::rename:
        members[x] = std::move(members[node.kids[0]]);
        for (int v : members[x])
          if (out.label[v] == node.a) out.label[v] = node.b;
        break;
      case Op::join:
        members[x] = std::move(members[node.kids[0]]);
        for (int u : members[x]) {
          if (out.label[u] != node.a) continue;
          for (int v : members[x]) {
            if (out.label[v] != node.b) continue;
            if (out.graph.has_edge(u, v)) {
              if (strict)
                throw InputError("redundant join j(" + std::to_string(node.a) + "," + std::to_string(node.b) +
                                 "): edge already present");
              continue;
            }
            out.graph.add_edge(u, v);
          }
        }
        break;
    }
  }
  return out;
}

using Sig = Signature;

struct Entry {
  BigCount count = 0;
  int k_left = -1;
  const Sig* a = nullptr;
  const Sig* b = nullptr;
};

using Level = std::map<Sig, Entry>;
using Table = std::vector<Level>;

Count sig_pairs(const Sig& s, int sets) {
  Count total = 0;
  for (int m = 1; m < sets; ++m) total += s[sets + m];
  return total;
}

Entry& slot(Level& level, Sig sig) {
  return level.try_emplace(std::move(sig)).first->second;
}

void trace(const Expression& e, const std::vector<Table>& tables, int x, int k, const Sig& sig,
           std::vector<int>& out) {
  const ExprNode& node = e.nodes[x];
  const Entry& entry = tables[x][k].at(sig);
  switch (node.op) {
    case Op::intro:
      if (k == 1) out.push_back(node.vertex);
      break;
    case Op::join_union:
      trace(e, tables, node.kids[0], entry.k_left, *entry.a, out);
      trace(e, tables, node.kids[1], k - entry.k_left, *entry.b, out);
      break;
    default:
      trace(e, tables, node.kids[0], k, *entry.a, out);
  }
}

}  // namespace

Expression parse_expression(std::string_view text) {
  Expression e = Parser(text).run();
  std::vector<char> used(kMaxLabel + 1, 0);
  for (const auto& node : e.nodes)
    for (int l : {node.a, node.b})
      if (l > 0) used[l] = 1;
  e.width = static_cast<int>(std::count(used.begin(), used.end(), 1));
  run_expression(e, true);
  return e;
}

std::string to_string(const Expression& e) {
  auto rec = [&](auto&& self, int x) -> std::string {
    const ExprNode& n = e.nodes[x];
    switch (n.op) {
      case Op::intro: return "v(" + std::to_string(n.a) + ")";
      case Op::join_union: return "u(" + self(self, n.kids[0]) + "," + self(self, n.kids[1]) + ")";
      case Op::join:
        return "j(" + std::to_string(n.a) + "," + std::to_string(n.b) + "," + self(self, n.kids[0]) + ")";
      case Op::rename:
        return "r(" + std::to_string(n.a) + "," + std::to_string(n.b) + "," + self(self, n.kids[0]) + ")";
    }
    return "";
  };
  return rec(rec, e.root());
}

LabeledGraph evaluate(const Expression& e) { return run_expression(e, false); }

Signature signature_union(const Signature& a, const Signature& b) {
  if (a.size() != b.size()) throw std::invalid_argument("signature widths differ");
  Signature s(a.size());
  for (std::size_t m = 0; m < a.size(); ++m) s[m] = a[m] + b[m];
  return s;
}

Signature signature_rename(const Signature& s, int from, int to) {
  const int sets = static_cast<int>(s.size() / 2);
  const int f = 1 << from, t = 1 << to;
  Signature out(s.size(), 0);
  for (int m = 1; m < sets; ++m) {
    const int target = (m & f) ? ((m & ~f) | t) : m;
    out[target] += s[m];
    out[sets + target] += s[sets + m];
  }
  return out;
}

Signature signature_join(const Signature& s, int i, int j) {
  const int sets = static_cast<int>(s.size() / 2);
  const int bi = 1 << i, bj = 1 << j;
  Count with_i = 0, with_j = 0;
  for (int m = 1; m < sets; ++m) {
    if (m & bi) with_i += s[m];
    if (m & bj) with_j += s[m];
  }
  if (with_i == 0 || with_j == 0) return s;
  Signature out = s;
  int merged = 0;
  std::uint32_t total = 0;
  for (int m = 1; m < sets; ++m) {
    if (!(m & (bi | bj))) continue;
    if (s[m] != 0) {
      merged |= m;
      total += s[m];
    }
    out[m] = out[sets + m] = 0;
  }
  out[merged] = total;
  out[sets + merged] = static_cast<std::uint32_t>(choose2(total));
  return out;
}

CountResult count_solutions(const Expression& e, const Options& options) {
  if (e.nodes.empty()) throw std::invalid_argument("empty expression");
  if (e.width > options.max_width) throw CapExceeded("expression uses " + std::to_string(e.width) + " labels", options.max_width);
  if (e.vertices > options.max_vertices)
    throw CapExceeded("expression has " + std::to_string(e.vertices) + " vertices", options.max_vertices);

  // Dense label indices 0..w-1 so label sets are w-bit masks.
  std::vector<int> dense(kMaxLabel + 1, -1);
  int w = 0;
  for (const auto& node : e.nodes) {
    for (int l : {node.a, node.b})
      if (l > 0 && dense[l] < 0) dense[l] = w++;
  }
  const int sets = 1 << w;
  const Sig zero(2 * sets, 0);

  CountResult result;
  std::vector<Table> tables(e.nodes.size());
  std::vector<int> size(e.nodes.size(), 0);
  for (std::size_t x = 0; x < e.nodes.size(); ++x) {
    const ExprNode& node = e.nodes[x];
    Table& t = tables[x];
    switch (node.op) {
      case Op::intro: {
        size[x] = 1;
        t.resize(2);
        Sig kept = zero;
        kept[1 << dense[node.a]] = 1;
        slot(t[0], kept).count = 1;
        slot(t[1], zero).count = 1;
        break;
      }
      case Op::join_union: {
        const int l = node.kids[0], r = node.kids[1];
        size[x] = size[l] + size[r];
        t.resize(size[x] + 1);
        for (int k1 = 0; k1 <= size[l]; ++k1)
          for (int k2 = 0; k2 <= size[r]; ++k2)
            for (const auto& [s1, e1] : tables[l][k1])
              for (const auto& [s2, e2] : tables[r][k2]) {
                Sig s = signature_union(s1, s2);
                Entry& entry = slot(t[k1 + k2], std::move(s));
                if (entry.a == nullptr) {
                  entry.k_left = k1;
                  entry.a = &s1;
                  entry.b = &s2;
                }
                entry.count += e1.count * e2.count;
              }
        break;
      }
      case Op::rename: {
        const int c = node.kids[0];
        size[x] = size[c];
        t.resize(size[x] + 1);
        for (int k = 0; k <= size[x]; ++k)
          for (const auto& [s1, e1] : tables[c][k]) {
            Sig s = signature_rename(s1, dense[node.a], dense[node.b]);
            Entry& entry = slot(t[k], std::move(s));
            if (entry.a == nullptr) entry.a = &s1;
            entry.count += e1.count;
          }
        break;
      }
      case Op::join: {
        const int c = node.kids[0];
        size[x] = size[c];
        t.resize(size[x] + 1);
        for (int k = 0; k <= size[x]; ++k)
          for (const auto& [s1, e1] : tables[c][k]) {
            Sig s = signature_join(s1, dense[node.a], dense[node.b]);
            Entry& entry = slot(t[k], std::move(s));
            if (entry.a == nullptr) entry.a = &s1;
            entry.count += e1.count;
          }
        break;
      }
    }
    for (int k = 0; k <= size[x]; ++k) {
      result.signatures = std::max(result.signatures, t[k].size());
      if (!options.check_tables) continue;
      BigCount sum = 0;
      for (const auto& [s, entry] : t[k]) sum += entry.count;
      if (sum != binomial(size[x], k))
        throw std::logic_error("clique-width table counts at a node do not sum to the binomial");
      ++result.levels_checked;
    }
  }

  const int root = e.root();
  for (int k = 0; k <= size[root]; ++k) {
    SizeResult r;
    const Sig* best = nullptr;
    for (const auto& [s, entry] : tables[root][k]) {
      const Count p = sig_pairs(s, sets);
      if (best == nullptr || p < r.min_pairs) {
        best = &s;
        r.min_pairs = p;
        r.count = entry.count;
      } else if (p == r.min_pairs) {
        r.count += entry.count;
      }
    }
    trace(e, tables, root, k, *best, r.witness);
    std::sort(r.witness.begin(), r.witness.end());
    result.per_size.push_back(std::move(r));
  }
  return result;
}

Solution solve(const Expression& e, int k, const Options& options) {
  const CountResult counts = count_solutions(e, options);
  const int top = std::min(k, e.vertices);
  int best = 0;
  for (int j = 1; j <= top; ++j)
    if (counts.per_size[j].min_pairs < counts.per_size[best].min_pairs) best = j;
  Solution sol;
  sol.deleted = counts.per_size[best].witness;
  sol.pairs = pairs_without(evaluate(e).graph, sol.deleted);
  if (sol.pairs != counts.per_size[best].min_pairs)
    throw std::logic_error("clique-width witness disagrees with its table entry");
  sol.optimal = true;
  return sol;
}

}  // namespace cnc::cw
