#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "reldim/sampling.hpp"

namespace reldim {

struct ForestParams {
  std::size_t n_trees = 100;
  std::size_t max_depth = 0;  // 0 = unlimited
  std::size_t min_samples_leaf = 1;
  std::size_t max_features = 0;  // 0 = ceil(sqrt(feature count))
  unsigned threads = 0;          // 0 = hardware concurrency; never affects output
};

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;     // go left when value <= threshold
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  double positive_fraction = 0.0;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;

  // Positive-class fraction of the leaf reached by row.
  double leaf_fraction(std::span<const double> row) const;
  bool votes_positive(std::span<const double> row) const { return leaf_fraction(row) > 0.5; }

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

struct ForestModel {
  ForestParams params;
  std::uint64_t seed = 0;
  std::size_t feature_count = 0;
  std::vector<DecisionTree> trees;
  // Per-feature mean (over trees) of the per-tree normalized Gini decrease.
  std::vector<double> impurity_decrease;
  // Training data held a single class.
  bool degenerate = false;
};

// Bootstrap-aggregated CART trees with Gini splits. Each tree draws a
// bootstrap sample of the training rows and, at every node, searches the best
// threshold over ceil(sqrt(F)) randomly chosen non-constant features. Tree t
// draws from derive_seed(seed, t), so results do not depend on scheduling.
// Throws ValidationError on empty training data.
ForestModel train_forest(const Dataset& data, std::span<const std::size_t> rows,
                         const ForestParams& params, std::uint64_t seed);
ForestModel train_forest(const Dataset& data, const ForestParams& params, std::uint64_t seed);

// Fraction of trees voting positive. Throws ValidationError when the row
// length differs from the training feature count.
double predict_forest(const ForestModel& m, std::span<const double> row);

// Mean decrease in Gini impurity per feature, summing to 1; uniform when no
// split reduced impurity.
std::vector<double> feature_importance(const ForestModel& m);

}  // namespace reldim
