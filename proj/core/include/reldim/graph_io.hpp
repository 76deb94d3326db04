#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "reldim/graph.hpp"

namespace reldim {

struct LoadedGraph {
  CommGraph graph;
  std::size_t records = 0;
  std::size_t self_loops_skipped = 0;
};

// Edge-message format: one JSON object per line with string fields
// "src", "dst" and "text". Blank lines are ignored.
LoadedGraph read_edge_messages(std::istream& in);
LoadedGraph load_graph(const std::filesystem::path& path);

// Writes one record per edge whose text is the rendered token bag, so that
// loading the output reproduces the graph. Records are ordered by (src id,
// dst id) as text. Isolated nodes are not written.
void write_edge_messages(std::ostream& out, const CommGraph& g);
void save_graph(const std::filesystem::path& path, const CommGraph& g);

std::string graph_summary(const LoadedGraph& loaded);

}  // namespace reldim
