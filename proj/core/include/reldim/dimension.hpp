#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace reldim {

// The ten relationship dimensions, in taxonomy order.
enum class Dimension : unsigned char {
  similarity,
  social_support,
  trust,
  power,
  knowledge,
  identity,
  respect,
  romance,
  fun,
  conflict,
};

inline constexpr std::size_t kDimensionCount = 10;

inline constexpr std::array<Dimension, kDimensionCount> kAllDimensions = {
    Dimension::similarity, Dimension::social_support, Dimension::trust,
    Dimension::power,      Dimension::knowledge,      Dimension::identity,
    Dimension::respect,    Dimension::romance,        Dimension::fun,
    Dimension::conflict,
};

// Dimensions that carry crowd-elicited words and can label edges. The order
// is the canonical tie-break order and the layout of every dimension feature
// vector.
inline constexpr std::size_t kLexiconDimensionCount = 7;

inline constexpr std::array<Dimension, kLexiconDimensionCount> kLexiconDimensions = {
    Dimension::social_support, Dimension::trust,   Dimension::power, Dimension::respect,
    Dimension::romance,        Dimension::fun,     Dimension::conflict,
};

enum class Polarity : unsigned char { none, positive, negative, both };

std::string_view to_string(Dimension d) noexcept;
std::string_view to_string(Polarity p) noexcept;

std::optional<Dimension> parse_dimension(std::string_view name) noexcept;
std::optional<Polarity> parse_polarity(std::string_view name) noexcept;

bool is_lexicon_bearing(Dimension d) noexcept;

// Position of d in kLexiconDimensions, or nullopt for lexicon-less dimensions.
std::optional<std::size_t> lexicon_slot(Dimension d) noexcept;

// positive + negative -> both; none is the identity.
Polarity merge(Polarity a, Polarity b) noexcept;

}  // namespace reldim
