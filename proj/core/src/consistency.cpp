#include "reldim/consistency.hpp"

#include <algorithm>

#include "reldim/correlation.hpp"
#include "reldim/error.hpp"

namespace reldim {

RaterGroups make_groups(const RatingMatrix& r, const RaterSplit& split) {
  RaterGroups g;
  const auto& raters = r.raters();
  if (split.attribute == SplitAttribute::age) {
    std::vector<double> ages;
    for (const RaterInfo& info : raters) {
      if (info.age) ages.push_back(*info.age);
    }
    if (ages.empty()) return g;
    std::sort(ages.begin(), ages.end());
    const std::size_t n = ages.size();
    const double median = n % 2 == 1 ? ages[n / 2] : 0.5 * (ages[n / 2 - 1] + ages[n / 2]);
    for (std::size_t i = 0; i < raters.size(); ++i) {
      if (!raters[i].age) continue;
      (*raters[i].age > median ? g.first : g.second).push_back(i);
    }
    return g;
  }
  for (std::size_t i = 0; i < raters.size(); ++i) {
    const auto& value = split.attribute == SplitAttribute::gender ? raters[i].gender : raters[i].race;
    if (!value) continue;
    (*value == split.level ? g.first : g.second).push_back(i);
  }
  return g;
}

double split_consistency(const RatingMatrix& r, std::span<const std::size_t> first,
                         std::span<const std::size_t> second) {
  if (first.size() < 2 || second.size() < 2) {
    throw InsufficientDataError("each rater group needs at least 2 raters (got " +
                                std::to_string(first.size()) + " and " + std::to_string(second.size()) +
                                ")");
  }
  const auto a = spearman_matrix(r, first);
  const auto b = spearman_matrix(r, second);
  const std::size_t n = r.word_count();
  std::vector<double> ua;
  std::vector<double> ub;
  ua.reserve(n * (n - 1) / 2);
  ub.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ua.push_back(a(i, j));
      ub.push_back(b(i, j));
    }
  }
  return pearson(ua, ub);
}

double split_consistency(const RatingMatrix& r, const RaterSplit& split) {
  const RaterGroups g = make_groups(r, split);
  return split_consistency(r, g.first, g.second);
}

}  // namespace reldim
