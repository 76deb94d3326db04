#include "reldim/dimension.hpp"

#include <algorithm>

namespace reldim {

namespace {

constexpr std::array<std::string_view, kDimensionCount> kNames = {
    "similarity", "social_support", "trust",   "power", "knowledge",
    "identity",   "respect",        "romance", "fun",   "conflict",
};

}  // namespace

std::string_view to_string(Dimension d) noexcept { return kNames[static_cast<std::size_t>(d)]; }

std::string_view to_string(Polarity p) noexcept {
  switch (p) {
    case Polarity::positive:
      return "positive";
    case Polarity::negative:
      return "negative";
    case Polarity::both:
      return "both";
    case Polarity::none:
      break;
  }
  return "none";
}

std::optional<Dimension> parse_dimension(std::string_view name) noexcept {
  // "support" is accepted as shorthand for social_support.
  if (name == "support") return Dimension::social_support;
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Dimension>(i);
  }
  return std::nullopt;
}

std::optional<Polarity> parse_polarity(std::string_view name) noexcept {
  if (name == "positive") return Polarity::positive;
  if (name == "negative") return Polarity::negative;
  if (name == "both") return Polarity::both;
  if (name == "none") return Polarity::none;
  return std::nullopt;
}

bool is_lexicon_bearing(Dimension d) noexcept { return lexicon_slot(d).has_value(); }

std::optional<std::size_t> lexicon_slot(Dimension d) noexcept {
  auto it = std::find(kLexiconDimensions.begin(), kLexiconDimensions.end(), d);
  if (it == kLexiconDimensions.end()) return std::nullopt;
  return static_cast<std::size_t>(it - kLexiconDimensions.begin());
}

Polarity merge(Polarity a, Polarity b) noexcept {
  if (a == Polarity::none) return b;
  if (b == Polarity::none || a == b) return a;
  return Polarity::both;
}

}  // namespace reldim
