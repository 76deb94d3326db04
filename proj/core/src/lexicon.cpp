#include "reldim/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "csv.hpp"
#include "reldim/error.hpp"

namespace reldim {

namespace {

bool polarities_overlap(Polarity a, Polarity b) noexcept {
  return a == Polarity::none || b == Polarity::none || a == Polarity::both ||
         b == Polarity::both || a == b;
}

}  // namespace

void Lexicon::add(LexiconEntry entry) {
  if (find(entry.dimension)) {
    throw ValidationError("dimension '" + std::string(to_string(entry.dimension)) +
                          "' declared twice");
  }
  if (entry.words.empty() && is_lexicon_bearing(entry.dimension)) {
    throw ValidationError("dimension '" + std::string(to_string(entry.dimension)) +
                          "' has no words");
  }
  for (const LexiconEntry& other : entries_) {
    if (!polarities_overlap(other.polarity, entry.polarity)) continue;
    for (const std::string& w : entry.words) {
      if (other.words.contains(w)) {
        throw ValidationError("word '" + w + "' appears in both '" +
                              std::string(to_string(other.dimension)) + "' and '" +
                              std::string(to_string(entry.dimension)) + "'");
      }
    }
  }
  entries_.push_back(std::move(entry));
}

const LexiconEntry* Lexicon::find(Dimension d) const noexcept {
  for (const LexiconEntry& e : entries_) {
    if (e.dimension == d) return &e;
  }
  return nullptr;
}

std::vector<const LexiconEntry*> Lexicon::labeling_entries() const {
  std::vector<const LexiconEntry*> out;
  for (const LexiconEntry& e : entries_) {
    if (is_lexicon_bearing(e.dimension) && !e.words.empty()) out.push_back(&e);
  }
  return out;
}

Lexicon read_lexicon(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!detail::next_line(in, line, line_no)) throw ParseError("empty lexicon file");
  const auto header = detail::split_csv_line(line, line_no);
  if (header != std::vector<std::string>{"dimension", "polarity", "words"}) {
    throw ParseError("expected header 'dimension,polarity,words'", line_no);
  }
  Lexicon lex;
  while (detail::next_line(in, line, line_no)) {
    const auto fields = detail::split_csv_line(line, line_no);
    if (fields.size() != 3) throw ParseError("expected 3 fields", line_no);
    auto dim = parse_dimension(fields[0]);
    if (!dim) throw ParseError("unknown dimension '" + fields[0] + "'", line_no);
    auto pol = parse_polarity(fields[1]);
    if (!pol) throw ParseError("unknown polarity '" + fields[1] + "'", line_no);
    LexiconEntry entry{*dim, *pol, {}};
    std::istringstream words(detail::to_lower(fields[2]));
    for (std::string w; words >> w;) entry.words.insert(w);
    try {
      lex.add(std::move(entry));
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open lexicon file " + path.string());
  return read_lexicon(in);
}

void write_lexicon(std::ostream& out, const Lexicon& lex) {
  out << "dimension,polarity,words\n";
  for (const LexiconEntry& e : lex.entries()) {
    out << to_string(e.dimension) << ',' << to_string(e.polarity) << ',';
    bool first = true;
    for (const std::string& w : e.words) {
      if (!first) out << ' ';
      out << w;
      first = false;
    }
    out << '\n';
  }
}

void save_lexicon(const std::filesystem::path& path, const Lexicon& lex) {
  if (lex.empty()) throw ValidationError("refusing to save an empty lexicon");
  std::ofstream out(path);
  if (!out) throw Error("cannot write lexicon file " + path.string());
  write_lexicon(out, lex);
  if (!out) throw Error("write failed for " + path.string());
}

Lexicon demo_lexicon() {
  Lexicon lex;
  lex.add({Dimension::social_support, Polarity::both,
           {"support", "care", "caring", "help", "comfort", "empathy", "kindness", "unsupportive"}});
  lex.add({Dimension::trust, Polarity::both,
           {"trust", "honesty", "loyalty", "reliable", "faithful", "untrustworthy", "dishonest"}});
  lex.add({Dimension::power, Polarity::both,
           {"power", "obligatory", "authority", "boss", "control", "money", "dependency"}});
  lex.add({Dimension::respect, Polarity::both,
           {"respect", "admiration", "esteem", "proud", "appreciation", "disappointing",
            "insubstantial"}});
  lex.add({Dimension::romance, Polarity::both,
           {"love", "romance", "passion", "intimacy", "affection", "kiss", "unloving"}});
  lex.add({Dimension::fun, Polarity::both,
           {"fun", "laughter", "joy", "humor", "lol", "haha", "boring"}});
  lex.add({Dimension::conflict, Polarity::negative,
           {"conflict", "hatred", "fight", "anger", "argue", "hostility", "jealousy"}});
  return lex;
}

}  // namespace reldim
