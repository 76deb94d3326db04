#include "reldim/synth_ratings.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reldim/error.hpp"
#include "reldim/rng.hpp"

namespace reldim {

namespace {

std::vector<RaterInfo> make_raters(std::size_t n) {
  std::vector<RaterInfo> raters(n);
  for (std::size_t i = 0; i < n; ++i) raters[i].id = "r" + std::to_string(i);
  return raters;
}

double to_scale(double x) { return std::clamp(std::round(x), 1.0, 5.0); }

}  // namespace

PlantedRatings planted_block_ratings(const PlantedBlockParams& params, std::uint64_t seed) {
  if (params.words_per_block == 0 || params.raters < 2) {
    throw ConfigError("planted ratings need words and at least 2 raters");
  }
  Rng rng(derive_seed(seed, 0x726174));
  const std::size_t nr = params.raters;
  std::vector<double> shared(nr);
  std::vector<double> own_a(nr);
  std::vector<double> own_b(nr);
  for (std::size_t r = 0; r < nr; ++r) {
    shared[r] = rng.normal();
    own_a[r] = rng.normal();
    own_b[r] = rng.normal();
  }

  const std::size_t nw = 2 * params.words_per_block;
  PlantedRatings out;
  out.block.resize(nw);
  std::vector<std::string> words(nw);
  // Interleave the blocks so recovery cannot lean on word order.
  for (std::size_t w = 0; w < nw; ++w) {
    out.block[w] = static_cast<int>(w % 2);
    words[w] = (w % 2 == 0 ? "pos" : "neg") + std::to_string(w / 2);
  }
  std::vector<double> values(nw * nr);
  for (std::size_t w = 0; w < nw; ++w) {
    const bool positive = out.block[w] == 0;
    for (std::size_t r = 0; r < nr; ++r) {
      const double latent = (positive ? 1.0 : -1.0) * params.shared_loading * shared[r] +
                            params.block_loading * (positive ? own_a[r] : own_b[r]) +
                            params.noise * rng.normal();
      const double mean = positive ? params.positive_mean : params.negative_mean;
      values[w * nr + r] = to_scale(mean + params.scale * latent);
    }
  }
  out.matrix = RatingMatrix(std::move(words), make_raters(nr), std::move(values));
  return out;
}

RatingMatrix uniform_ratings(std::size_t words, std::size_t raters, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x756e69));
  std::vector<std::string> names(words);
  for (std::size_t w = 0; w < words; ++w) names[w] = "w" + std::to_string(w);
  std::vector<double> values(words * raters);
  for (double& v : values) v = static_cast<double>(1 + rng.below(5));
  return RatingMatrix(std::move(names), make_raters(raters), std::move(values));
}

}  // namespace reldim
