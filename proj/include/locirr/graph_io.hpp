#pragma once

#include <iosfwd>
#include <string>

#include "locirr/graph.hpp"

namespace locirr {

// Edge-list text format: a header line "n m", then m lines "u v". Lines whose
// first non-blank character is '#' are comments; blank lines are ignored.
// Edge lines may come in any order. The writer emits canonical order.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);

void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

} // namespace locirr
