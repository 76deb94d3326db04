#include "reldim/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "reldim/error.hpp"

namespace reldim {

using nlohmann::json;

namespace {

const std::string& require_string(const json& record, const char* field, std::size_t line) {
  auto it = record.find(field);
  if (it == record.end() || !it->is_string()) {
    throw ParseError(std::string("missing string field '") + field + "'", line);
  }
  return it->get_ref<const std::string&>();
}

}  // namespace

LoadedGraph read_edge_messages(std::istream& in) {
  GraphBuilder builder;
  LoadedGraph result;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!record.is_object()) throw ParseError("record is not an object", line_no);
    const std::string& src = require_string(record, "src", line_no);
    const std::string& dst = require_string(record, "dst", line_no);
    if (src.empty() || dst.empty()) throw ParseError("empty src or dst", line_no);
    std::string_view message;
    if (auto it = record.find("text"); it != record.end()) {
      if (!it->is_string()) throw ParseError("field 'text' is not a string", line_no);
      message = it->get_ref<const std::string&>();
    }
    builder.add_message(src, dst, message);
    ++result.records;
  }
  result.self_loops_skipped = builder.self_loops_skipped();
  result.graph = std::move(builder).build();
  return result;
}

LoadedGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open graph file " + path.string());
  return read_edge_messages(in);
}

void write_edge_messages(std::ostream& out, const CommGraph& g) {
  // Sorted by id text so the output does not depend on node numbering.
  std::vector<const Edge*> order;
  order.reserve(g.edge_count());
  for (const Edge& e : g.edges()) order.push_back(&e);
  std::sort(order.begin(), order.end(), [&g](const Edge* a, const Edge* b) {
    const int c = g.id(a->src).compare(g.id(b->src));
    return c != 0 ? c < 0 : g.id(a->dst) < g.id(b->dst);
  });
  for (const Edge* ep : order) {
    const Edge& e = *ep;
    json record = {{"src", g.id(e.src)}, {"dst", g.id(e.dst)}, {"text", render_bag(e.bag)}};
    out << record.dump() << '\n';
  }
}

void save_graph(const std::filesystem::path& path, const CommGraph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write graph file " + path.string());
  write_edge_messages(out, g);
  if (!out) throw Error("write failed for " + path.string());
}

std::string graph_summary(const LoadedGraph& loaded) {
  std::ostringstream os;
  os << "records: " << loaded.records << '\n'
     << "nodes: " << loaded.graph.node_count() << '\n'
     << "edges: " << loaded.graph.edge_count() << '\n'
     << "self_loops_skipped: " << loaded.self_loops_skipped << '\n';
  return os.str();
}

}  // namespace reldim
