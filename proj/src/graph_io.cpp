#include "cnc/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cnc/errors.hpp"

namespace cnc {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ": " + msg);
}

template <typename T>
T parse_number(std::istringstream& ss, int line, const char* what) {
  long long v;
  if (!(ss >> v)) fail(line, std::string("expected ") + what);
  if (v < 0) fail(line, std::string("negative ") + what);
  return static_cast<T>(v);
}

void expect_end(std::istringstream& ss, int line) {
  std::string rest;
  if (ss >> rest) fail(line, "trailing token '" + rest + "'");
}

}  // namespace

GraphFile read_graph_file(std::istream& in) {
  GraphFile out;
  bool header = false;
  std::size_t expected_edges = 0;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') fail(line, "CRLF line endings are not accepted");
    std::istringstream ss(text);
    std::string tag;
    if (!(ss >> tag) || tag == "c") continue;
    if (tag == "p") {
      if (header) fail(line, "duplicate header");
      std::string kind;
      if (!(ss >> kind) || kind != "cnc") fail(line, "header must be 'p cnc <n> <m>'");
      const auto n = parse_number<long long>(ss, line, "vertex count");
      expected_edges = parse_number<std::size_t>(ss, line, "edge count");
      expect_end(ss, line);
      if (n > (1LL << 30)) fail(line, "vertex count too large");
      out.graph = Graph(static_cast<int>(n));
      header = true;
    } else if (tag == "e") {
      if (!header) fail(line, "edge before header");
      const auto u = parse_number<long long>(ss, line, "endpoint");
      const auto v = parse_number<long long>(ss, line, "endpoint");
      expect_end(ss, line);
      const long long n = out.graph.size();
      if (u < 1 || v < 1 || u > n || v > n) fail(line, "endpoint out of range [1," + std::to_string(n) + "]");
      if (u == v) fail(line, "loop at vertex " + std::to_string(u));
      if (out.graph.has_edge(static_cast<int>(u - 1), static_cast<int>(v - 1)))
        fail(line, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
      out.graph.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
    } else if (tag == "b") {
      if (!header) fail(line, "budget line before header");
      if (out.k) fail(line, "duplicate budget line");
      const auto k = parse_number<long long>(ss, line, "k");
      const auto x = parse_number<Count>(ss, line, "x");
      expect_end(ss, line);
      if (k > out.graph.size()) fail(line, "k exceeds vertex count");
      out.k = static_cast<int>(k);
      out.x = x;
    } else {
      fail(line, "unknown line tag '" + tag + "'");
    }
  }
  if (!header) throw InputError("missing 'p cnc' header");
  if (out.graph.edge_count() != expected_edges)
    throw InputError("header announces " + std::to_string(expected_edges) + " edges, found " +
                     std::to_string(out.graph.edge_count()));
  return out;
}

GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return read_graph_file(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Graph read_graph(std::istream& in) { return read_graph_file(in).graph; }

void write_graph(std::ostream& out, const Graph& g) {
  if (!g.unit_weights()) throw InputError("graph has non-unit weights; expand them before writing");
  out << "p cnc " << g.size() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

void write_instance(std::ostream& out, const Instance& inst) {
  write_graph(out, inst.graph);
  out << "b " << inst.k << ' ' << inst.x << '\n';
}

}  // namespace cnc
