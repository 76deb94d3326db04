#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "reldim/error.hpp"
#include "reldim/forest.hpp"
#include "reldim/sampling.hpp"

using namespace reldim;

namespace {

Dataset make(std::size_t f, const std::vector<std::vector<double>>& rows, const std::vector<bool>& labels) {
  Dataset d;
  d.feature_count = f;
  for (const auto& r : rows) d.features.insert(d.features.end(), r.begin(), r.end());
  d.labels = labels;
  d.names.resize(f);
  return d;
}

Dataset noisy(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z;
  std::vector<std::vector<double>> rows;
  std::vector<bool> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const bool y = gen() % 2;
    rows.push_back({z(gen) + (y ? 1.0 : 0.0), z(gen), static_cast<double>(gen() % 4)});
    labels.push_back(y);
  }
  return make(3, rows, labels);
}

}  // namespace

TEST(Forest, SingleClassPredictsThatClass) {
  const Dataset d = make(2, {{0, 1}, {3, 4}, {5, 1}}, {true, true, true});
  const ForestModel m = train_forest(d, {}, 1);
  EXPECT_TRUE(m.degenerate);
  for (double x : {-10.0, 0.0, 2.5, 100.0}) {
    const std::vector<double> row{x, -x};
    EXPECT_EQ(predict_forest(m, row), 1.0);
  }
  const auto w = feature_importance(m);
  EXPECT_DOUBLE_EQ(w[0], 0.5);
  EXPECT_DOUBLE_EQ(w[1], 0.5);
}

TEST(Forest, SingleNegativeClassPredictsZero) {
  const Dataset d = make(1, {{0}, {1}}, {false, false});
  const ForestModel m = train_forest(d, {}, 1);
  const std::vector<double> row{0.5};
  EXPECT_EQ(predict_forest(m, row), 0.0);
}

TEST(Forest, EmptyDataRejected) {
  const Dataset d = make(1, {}, {});
  EXPECT_THROW(train_forest(d, {}, 1), ValidationError);
}

TEST(Forest, SeparableOneDimension) {
  std::vector<std::vector<double>> rows;
  std::vector<bool> labels;
  std::vector<double> x;
  for (int i = 0; i < 50; ++i) {
    const bool y = i % 2 == 0;
    rows.push_back({y ? 1.0 : 0.0});
    labels.push_back(y);
    x.push_back(y ? 1.0 : 0.0);
  }
  const Dataset d = make(1, rows, labels);
  const ForestModel m = train_forest(d, {}, 3);
  std::size_t right = 0;
  for (std::size_t i = 0; i < d.size(); ++i) right += (predict_forest(m, d.row(i)) >= 0.5) == labels[i];
  const double acc = static_cast<double>(right) / d.size();
  EXPECT_EQ(acc, oracle::best_threshold_accuracy(x, labels));
  EXPECT_EQ(acc, 1.0);
}

TEST(Forest, DeepTreesFitDistinctTrainingRows) {
  // With unlimited depth every distinct feature vector gets a pure leaf, so
  // each tree classifies its in-bag rows perfectly.
  const Dataset d = noisy(300, 4);
  ForestParams p;
  p.n_trees = 1;
  const ForestModel m = train_forest(d, p, 9);
  std::size_t right = 0;
  for (std::size_t i = 0; i < d.size(); ++i) right += (predict_forest(m, d.row(i)) >= 0.5) == d.labels[i];
  EXPECT_GT(static_cast<double>(right) / d.size(), 0.75);
}

TEST(Forest, Deterministic) {
  const Dataset d = noisy(200, 5);
  const ForestModel a = train_forest(d, {}, 42);
  const ForestModel b = train_forest(d, {}, 42);
  ASSERT_EQ(a.trees.size(), 100u);
  EXPECT_EQ(a.trees, b.trees);
  EXPECT_EQ(a.impurity_decrease, b.impurity_decrease);
  const ForestModel c = train_forest(d, {}, 43);
  EXPECT_NE(a.trees, c.trees);
}

TEST(Forest, ThreadCountDoesNotMatter) {
  const Dataset d = noisy(200, 6);
  ForestParams one;
  one.threads = 1;
  ForestParams four;
  four.threads = 4;
  const ForestModel a = train_forest(d, one, 7);
  const ForestModel b = train_forest(d, four, 7);
  EXPECT_EQ(a.trees, b.trees);
  EXPECT_EQ(a.impurity_decrease, b.impurity_decrease);
}

TEST(Forest, DepthAndLeafLimits) {
  const Dataset d = noisy(300, 8);
  ForestParams stump;
  stump.max_depth = 1;
  stump.n_trees = 10;
  for (const auto& t : train_forest(d, stump, 1).trees) EXPECT_LE(t.nodes.size(), 3u);
  ForestParams big_leaf;
  big_leaf.min_samples_leaf = 1000;
  big_leaf.n_trees = 5;
  for (const auto& t : train_forest(d, big_leaf, 1).trees) EXPECT_EQ(t.nodes.size(), 1u);
}

TEST(Forest, ImportancesSumToOne) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ForestModel m = train_forest(noisy(150, seed), {}, seed);
    const auto w = feature_importance(m);
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-9);
    for (double x : w) EXPECT_GE(x, 0.0);
    EXPECT_EQ(std::max_element(w.begin(), w.end()) - w.begin(), 0) << "feature 0 carries the signal";
  }
}

TEST(Forest, UniformImportanceWithoutSplits) {
  ForestModel m;
  m.feature_count = 4;
  m.impurity_decrease = {0, 0, 0, 0};
  for (double x : feature_importance(m)) EXPECT_DOUBLE_EQ(x, 0.25);
}

TEST(Forest, LengthMismatch) {
  const ForestModel m = train_forest(noisy(50, 1), {}, 1);
  const std::vector<double> row{1.0};
  EXPECT_THROW(predict_forest(m, row), ValidationError);
}

TEST(Forest, VoteFraction) {
  ForestModel m;
  m.feature_count = 1;
  for (int i = 0; i < 100; ++i) {
    DecisionTree t;
    TreeNode leaf;
    leaf.positive_fraction = i < 60 ? 1.0 : 0.0;
    t.nodes.push_back(leaf);
    m.trees.push_back(t);
  }
  const std::vector<double> row{0.0};
  EXPECT_DOUBLE_EQ(predict_forest(m, row), 0.6);
  for (auto& t : m.trees) t.nodes[0].positive_fraction = 0.9;
  EXPECT_DOUBLE_EQ(predict_forest(m, row), 1.0);
}

TEST(Forest, RowSubsetTraining) {
  const Dataset d = noisy(100, 2);
  std::vector<std::size_t> rows(50);
  std::iota(rows.begin(), rows.end(), 0);
  const ForestModel a = train_forest(d, rows, {}, 5);
  // Same rows presented through a dataset copy of just those rows.
  Dataset half;
  half.feature_count = d.feature_count;
  half.features.assign(d.features.begin(), d.features.begin() + 50 * d.feature_count);
  half.labels.assign(d.labels.begin(), d.labels.begin() + 50);
  const ForestModel b = train_forest(half, {}, 5);
  EXPECT_EQ(a.trees, b.trees);
}
