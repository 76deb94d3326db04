#include "reldim/labeling.hpp"

#include <ostream>
#include <sstream>

#include <json.hpp>

#include "reldim/error.hpp"

namespace reldim {

EdgeLabel label_edge(const TokenBag& bag, const Lexicon& lex, MatchCounting counting) {
  const auto entries = lex.labeling_entries();
  if (entries.empty()) throw ValidationError("lexicon has no lexicon-bearing dimension with words");
  EdgeLabel label;
  for (const LexiconEntry* e : entries) {
    const std::size_t slot = *lexicon_slot(e->dimension);
    std::uint32_t tally = 0;
    for (const auto& [token, count] : bag) {
      if (e->words.contains(token)) tally += counting == MatchCounting::occurrences ? count : 1;
    }
    label.match_counts[slot] = tally;
  }
  std::uint32_t best = 0;
  for (const LexiconEntry* e : entries) {
    const std::uint32_t tally = label.match_counts[*lexicon_slot(e->dimension)];
    if (tally > best) {
      best = tally;
      label.dimension = e->dimension;
    }
  }
  return label;
}

LabeledGraph label_graph(const CommGraph& g, const Lexicon& lex, MatchCounting counting) {
  LabeledGraph out;
  out.labels.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    EdgeLabel label = label_edge(e.bag, lex, counting);
    if (label.dimension) {
      ++out.histogram.typed[*lexicon_slot(*label.dimension)];
    } else {
      ++out.histogram.untyped;
    }
    out.labels.push_back(label);
  }
  return out;
}

std::string format_histogram(const LabelHistogram& h) {
  std::ostringstream os;
  for (std::size_t i = 0; i < kLexiconDimensionCount; ++i) {
    os << to_string(kLexiconDimensions[i]) << ": " << h.typed[i] << '\n';
  }
  os << "untyped: " << h.untyped << '\n';
  return os.str();
}

void write_labeled_edges(std::ostream& out, const CommGraph& g, const EdgeLabels& labels) {
  if (labels.size() != g.edge_count()) throw ConsistencyError("label count does not match edge count");
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    const EdgeLabel& label = labels[e];
    nlohmann::json record = {
        {"src", g.id(edge.src)},
        {"dst", g.id(edge.dst)},
        {"dimension", label.dimension ? std::string(to_string(*label.dimension)) : "untyped"},
        {"tallies", label.match_counts},
    };
    out << record.dump() << '\n';
  }
}

}  // namespace reldim
