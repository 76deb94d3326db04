#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "reldim/dimension.hpp"
#include "reldim/graph.hpp"
#include "reldim/labeling.hpp"

namespace reldim {

// |Γ_out(u) ∩ Γ_in(v)| / |Γ_out(u)|, and 0 when u has no out-neighbors.
double triangle_overlap(const CommGraph& g, NodeIndex u, NodeIndex v);
double triangle_overlap(const CommGraph& g, std::string_view u, std::string_view v);

// Size of Γ_out(u) ∩ Γ_in(v).
std::size_t common_neighbor_count(const CommGraph& g, NodeIndex u, NodeIndex v);

// Which edge of the 2-path u->w->v supplies the common neighbor's type.
enum class DimensionSource { first_edge, second_edge };

inline constexpr std::size_t kDimensionVectorSize = kLexiconDimensionCount + 1;

// Common neighbors of (u, v) counted per edge type: kLexiconDimensions order,
// then the untyped bucket.
struct DimensionVector {
  std::array<std::uint32_t, kDimensionVectorSize> counts{};

  std::uint32_t untyped() const noexcept { return counts[kLexiconDimensionCount]; }
  std::uint64_t total() const noexcept;

  friend bool operator==(const DimensionVector&, const DimensionVector&) = default;
};

// Throws ConsistencyError if an edge it touches has no label.
DimensionVector dimension_vector(const CommGraph& g, const EdgeLabels& labels, NodeIndex u,
                                 NodeIndex v, DimensionSource source = DimensionSource::first_edge);

enum class FeatureSet { triangle_overlap, dimensions, combined };

inline constexpr std::array<FeatureSet, 3> kAllFeatureSets = {
    FeatureSet::triangle_overlap, FeatureSet::dimensions, FeatureSet::combined};

std::string_view to_string(FeatureSet s) noexcept;
std::string_view display_name(FeatureSet s) noexcept;

struct FeatureOptions {
  DimensionSource source = DimensionSource::first_edge;
  // Divide dimension counts by |Γ_out(u)|.
  bool normalize_dimensions = false;
};

std::vector<std::string> feature_names(FeatureSet s);

}  // namespace reldim
