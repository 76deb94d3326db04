#pragma once

#include <span>
#include <vector>

namespace reldim {

// Mann-Whitney AUC: the fraction of (positive, negative) pairs where the
// positive scores higher, ties counting one half. O(n log n). Throws
// ValidationError when a class is absent.
double auc(std::span<const double> scores, const std::vector<bool>& labels);

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
};

// A score >= threshold predicts positive.
Confusion confusion(std::span<const double> scores, const std::vector<bool>& labels,
                    double threshold = 0.5);

// tp / (tp + fp); 0 when nothing is predicted positive.
double precision(const Confusion& c) noexcept;
double accuracy(const Confusion& c) noexcept;

}  // namespace reldim
