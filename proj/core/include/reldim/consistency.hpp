#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "reldim/ratings.hpp"

namespace reldim {

enum class SplitAttribute { gender, age, race };

// Binarization of a rater attribute. For gender and race the first group is
// raters whose value equals `level` and the second is every other rater with
// a value. For age the first group is above the median age, the second at or
// below it. Raters without the attribute are left out.
struct RaterSplit {
  SplitAttribute attribute = SplitAttribute::gender;
  std::string level;
};

struct RaterGroups {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
};

RaterGroups make_groups(const RatingMatrix& r, const RaterSplit& split);

// Pearson correlation between the upper triangles of the two groups' word x
// word Spearman matrices. Throws InsufficientDataError if a group has fewer
// than two raters.
double split_consistency(const RatingMatrix& r, std::span<const std::size_t> first,
                         std::span<const std::size_t> second);
double split_consistency(const RatingMatrix& r, const RaterSplit& split);

}  // namespace reldim
