#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "reldim/dimension.hpp"
#include "reldim/graph.hpp"
#include "reldim/lexicon.hpp"

namespace reldim {

struct SynthParams {
  std::size_t n_nodes = 1000;
  // Probability of each ordered pair in the seed graph.
  double base_density = 0.002;
  // Triangle-closure probability keyed by the planted dimension of the first
  // edge of a 2-path. Dimensions absent here close with probability 0.
  std::array<double, kDimensionCount> closure{};
  double untyped_closure = 0.0;
  // Relative frequency of each planted dimension. Zero weights are never
  // planted; all-zero means uniform over the lexicon's labeling dimensions.
  std::array<double, kDimensionCount> dimension_weights{};
  // Fraction of edges planted untyped (bag holds noise words only).
  double untyped_fraction = 0.0;
  std::size_t words_per_edge = 3;
  std::size_t noise_words_per_edge = 2;
  // Guard against runaway closure cascades; 0 disables.
  std::size_t max_edges = 0;
};

struct SynthTruth {
  // Planted dimension per EdgeId of the generated graph; nullopt = untyped.
  std::vector<std::optional<Dimension>> planted;
  // True for edges added by triangle closure.
  std::vector<bool> closure_edge;
  std::array<double, kDimensionCount> closure{};
  double untyped_closure = 0.0;
  std::size_t seed_edges = 0;
};

struct SynthResult {
  CommGraph graph;
  SynthTruth truth;
};

// Samples a seed graph, plants a dimension per edge and fills its bag from
// that dimension's lexicon words plus noise, then closes 2-paths u->w->v into
// u->v with the closure probability of (u,w). Every 2-path of the final graph
// is decided exactly once, including 2-paths created by closure. Output is a
// pure function of (params, lexicon, seed).
SynthResult synth_graph(const SynthParams& params, const Lexicon& lexicon, std::uint64_t seed);

// Desk-scale preset: 5000 nodes, mean seed out-degree 7, only trust and
// social_support edges close triangles. Closure adds about p*k^2 edges per
// node at mean degree k, which stays finite while 4*p*k0 < 1; the preset sits
// at about 0.8 of that bound (roughly 48k edges).
SynthParams demo_synth_params();

// Noise tokens used by the generator; none collide with demo_lexicon().
const std::vector<std::string>& synth_noise_vocabulary();

}  // namespace reldim
