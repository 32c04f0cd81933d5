#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "cnc/graph.hpp"

namespace cnc {

// Text format (vertices 1-indexed in files, 0-indexed in memory):
//   c <comment>
//   p cnc <n> <m>
//   e <u> <v>        (m lines, 1 <= u < v <= n)
//   b <k> <x>        (instance files only)

struct GraphFile {
  Graph graph;
  std::optional<int> k;
  std::optional<Count> x;
};

GraphFile read_graph_file(std::istream& in);
GraphFile read_graph_file(const std::string& path);

Graph read_graph(std::istream& in);

void write_graph(std::ostream& out, const Graph& g);
void write_instance(std::ostream& out, const Instance& inst);

}  // namespace cnc
