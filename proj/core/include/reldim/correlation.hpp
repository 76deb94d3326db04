#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "reldim/ratings.hpp"

namespace reldim {

// Fractional ranks (1-based); tied values share the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> x);

// Pearson correlation; 0 when either vector has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

// Pearson correlation of the average ranks.
double spearman(std::span<const double> x, std::span<const double> y);

// Symmetric word x word matrix with a unit diagonal.
class CorrelationMatrix {
 public:
  CorrelationMatrix() = default;
  CorrelationMatrix(std::vector<std::string> words, std::vector<double> values);

  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<std::string>& words() const noexcept { return words_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * words_.size() + j]; }
  std::span<const double> values() const noexcept { return values_; }

  // Words whose rating vector had zero variance; their off-diagonal
  // correlations are 0.
  std::vector<std::size_t> degenerate_words;

 private:
  std::vector<std::string> words_;
  std::vector<double> values_;
};

CorrelationMatrix spearman_matrix(const RatingMatrix& r);
// Restricted to a subset of raters (columns).
CorrelationMatrix spearman_matrix(const RatingMatrix& r, std::span<const std::size_t> raters);

}  // namespace reldim
