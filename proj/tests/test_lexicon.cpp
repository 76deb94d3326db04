#include <gtest/gtest.h>

#include <sstream>

#include "reldim/error.hpp"
#include "reldim/lexicon.hpp"
#include "temp_dir.hpp"

using namespace reldim;

namespace {

Lexicon parse(const std::string& text) {
  std::istringstream in(text);
  return read_lexicon(in);
}

}  // namespace

TEST(Lexicon, DemoIsValidAndCoversSevenDimensions) {
  const Lexicon lex = demo_lexicon();
  EXPECT_EQ(lex.labeling_entries().size(), kLexiconDimensionCount);
  for (std::size_t i = 0; i < kLexiconDimensionCount; ++i) {
    EXPECT_EQ(lex.labeling_entries()[i]->dimension, kLexiconDimensions[i]);
  }
  EXPECT_EQ(lex.find(Dimension::conflict)->polarity, Polarity::negative);
}

TEST(Lexicon, ReadWriteRoundTrip) {
  const Lexicon lex = demo_lexicon();
  std::ostringstream out;
  write_lexicon(out, lex);
  EXPECT_EQ(parse(out.str()), lex);
}

TEST(Lexicon, ParsesFileFormat) {
  const Lexicon lex = parse("dimension,polarity,words\ntrust,positive,trust rely\nfun,both,lol haha\nidentity,positive,\n");
  ASSERT_EQ(lex.size(), 3u);
  EXPECT_EQ(lex.find(Dimension::trust)->words, (std::set<std::string, std::less<>>{"rely", "trust"}));
  EXPECT_TRUE(lex.find(Dimension::identity)->words.empty());
  EXPECT_EQ(lex.labeling_entries().size(), 2u);
}

TEST(Lexicon, RejectsUnknownDimension) {
  EXPECT_THROW(parse("dimension,polarity,words\nfriendship,positive,pal\n"), ParseError);
}

TEST(Lexicon, RejectsBadHeaderAndPolarity) {
  EXPECT_THROW(parse("dim,pol,words\n"), ParseError);
  EXPECT_THROW(parse("dimension,polarity,words\ntrust,sideways,trust\n"), ParseError);
}

TEST(Lexicon, RejectsEmptyWordsOnLexiconDimension) {
  Lexicon lex;
  EXPECT_THROW(lex.add({Dimension::trust, Polarity::positive, {}}), ValidationError);
  EXPECT_NO_THROW(lex.add({Dimension::knowledge, Polarity::positive, {}}));
}

TEST(Lexicon, RejectsRepeatedDimension) {
  Lexicon lex;
  lex.add({Dimension::fun, Polarity::positive, {"lol"}});
  EXPECT_THROW(lex.add({Dimension::fun, Polarity::positive, {"haha"}}), ValidationError);
}

TEST(Lexicon, WordUniqueWithinPolarity) {
  Lexicon lex;
  lex.add({Dimension::fun, Polarity::positive, {"lol", "joke"}});
  EXPECT_THROW(lex.add({Dimension::trust, Polarity::positive, {"joke"}}), ValidationError);
  EXPECT_THROW(lex.add({Dimension::trust, Polarity::both, {"joke"}}), ValidationError);
  EXPECT_NO_THROW(lex.add({Dimension::conflict, Polarity::negative, {"joke"}}));
}

TEST(Lexicon, SaveRefusesEmpty) {
  testing_util::TempDir dir;
  EXPECT_THROW(save_lexicon(dir / "lex.csv", Lexicon{}), ValidationError);
  EXPECT_FALSE(std::filesystem::exists(dir / "lex.csv"));
}

TEST(Lexicon, SaveLoad) {
  testing_util::TempDir dir;
  save_lexicon(dir / "lex.csv", demo_lexicon());
  EXPECT_EQ(load_lexicon(dir / "lex.csv"), demo_lexicon());
}

TEST(Dimensions, NamesRoundTrip) {
  for (Dimension d : kAllDimensions) EXPECT_EQ(parse_dimension(to_string(d)), d);
  EXPECT_EQ(parse_dimension("support"), Dimension::social_support);
  EXPECT_FALSE(parse_dimension("friendship").has_value());
  EXPECT_FALSE(is_lexicon_bearing(Dimension::similarity));
  EXPECT_FALSE(is_lexicon_bearing(Dimension::identity));
  EXPECT_FALSE(is_lexicon_bearing(Dimension::knowledge));
  EXPECT_EQ(lexicon_slot(Dimension::social_support), 0u);
  EXPECT_EQ(lexicon_slot(Dimension::conflict), 6u);
}
