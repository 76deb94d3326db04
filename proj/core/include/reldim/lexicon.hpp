#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "reldim/dimension.hpp"

namespace reldim {

struct LexiconEntry {
  Dimension dimension;
  Polarity polarity = Polarity::none;
  std::set<std::string, std::less<>> words;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

// Dimension -> polarity-signed word set. Entries keep declaration order,
// which is also the tie-break order used when labeling edges.
class Lexicon {
 public:
  Lexicon() = default;

  // Validates and appends. Throws ValidationError on a repeated dimension, an
  // empty word set for a lexicon-bearing dimension, or a word shared with a
  // dimension of overlapping polarity.
  void add(LexiconEntry entry);

  const std::vector<LexiconEntry>& entries() const noexcept { return entries_; }
  const LexiconEntry* find(Dimension d) const noexcept;
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  // Lexicon-bearing entries with at least one word, in declaration order.
  std::vector<const LexiconEntry*> labeling_entries() const;

  friend bool operator==(const Lexicon&, const Lexicon&) = default;

 private:
  std::vector<LexiconEntry> entries_;
};

// Flat CSV with header "dimension,polarity,words"; one row per dimension,
// words separated by spaces.
Lexicon read_lexicon(std::istream& in);
Lexicon load_lexicon(const std::filesystem::path& path);
void write_lexicon(std::ostream& out, const Lexicon& lex);
// Refuses (ValidationError) to save an empty lexicon.
void save_lexicon(const std::filesystem::path& path, const Lexicon& lex);

// Small built-in lexicon over the seven lexicon-bearing dimensions, used by
// the synthetic generator when no lexicon is supplied.
Lexicon demo_lexicon();

}  // namespace reldim
