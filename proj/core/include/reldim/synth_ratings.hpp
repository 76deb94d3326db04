#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "reldim/ratings.hpp"

namespace reldim {

// Two planted word blocks rated through a shared rater factor (loaded with
// opposite signs on the two blocks) plus a block-specific factor and noise.
// Block 0 sits above the scale midpoint and block 1 below it.
struct PlantedBlockParams {
  std::size_t words_per_block = 20;
  std::size_t raters = 100;
  // Latent variances 0.69 / 0.19 / 0.12, chosen so the realized Spearman
  // after rounding and clamping to 1-5 lands near 0.8 within a block and
  // -0.6 across blocks.
  double shared_loading = 0.8307;  // sqrt(0.69)
  double block_loading = 0.4359;   // sqrt(0.19)
  double noise = 0.3464;           // sqrt(0.12)
  double scale = 1.0;
  double positive_mean = 3.3;
  double negative_mean = 2.7;
};

struct PlantedRatings {
  RatingMatrix matrix;
  std::vector<int> block;  // per word: 0 = positive block, 1 = negative block
};

PlantedRatings planted_block_ratings(const PlantedBlockParams& params, std::uint64_t seed);

// Every cell drawn independently and uniformly from {1..5}.
RatingMatrix uniform_ratings(std::size_t words, std::size_t raters, std::uint64_t seed);

}  // namespace reldim
