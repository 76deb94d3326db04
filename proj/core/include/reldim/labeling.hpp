#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "reldim/dimension.hpp"
#include "reldim/graph.hpp"
#include "reldim/lexicon.hpp"
#include "reldim/tokenize.hpp"

namespace reldim {

enum class MatchCounting {
  occurrences,  // every token occurrence counts
  types,        // each distinct matching token counts once
};

// Tallies are laid out in kLexiconDimensions order.
using MatchCounts = std::array<std::uint32_t, kLexiconDimensionCount>;

struct EdgeLabel {
  std::optional<Dimension> dimension;  // nullopt = untyped
  MatchCounts match_counts{};

  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

// Tallies bag tokens found in each lexicon-bearing dimension and picks the
// largest tally; ties go to the dimension declared first in the lexicon.
// Untyped iff every tally is zero. Throws ValidationError if the lexicon has
// no lexicon-bearing entry.
EdgeLabel label_edge(const TokenBag& bag, const Lexicon& lex,
                     MatchCounting counting = MatchCounting::occurrences);

// One label per EdgeId.
using EdgeLabels = std::vector<EdgeLabel>;

// Untyped count followed by one count per kLexiconDimensions entry.
struct LabelHistogram {
  std::size_t untyped = 0;
  std::array<std::size_t, kLexiconDimensionCount> typed{};
};

struct LabeledGraph {
  EdgeLabels labels;
  LabelHistogram histogram;
};

LabeledGraph label_graph(const CommGraph& g, const Lexicon& lex,
                         MatchCounting counting = MatchCounting::occurrences);

std::string format_histogram(const LabelHistogram& h);

// One JSON object per edge: {"src","dst","dimension","tallies":[...]}, the
// tally vector in kLexiconDimensions order.
void write_labeled_edges(std::ostream& out, const CommGraph& g, const EdgeLabels& labels);

}  // namespace reldim
