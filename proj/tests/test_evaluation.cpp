#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <json.hpp>

#include "reldim/error.hpp"
#include "reldim/evaluation.hpp"

using namespace reldim;

namespace {

std::vector<PairSample> toy_pairs(std::size_t n_pos, std::size_t n_neg, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<PairSample> out;
  for (std::size_t i = 0; i < n_pos + n_neg; ++i) {
    PairSample p;
    p.u = static_cast<NodeIndex>(i);
    p.v = static_cast<NodeIndex>(i + 1);
    p.positive = i < n_pos;
    p.out_degree = 5;
    const std::uint32_t trust = p.positive ? static_cast<std::uint32_t>(gen() % 3) : static_cast<std::uint32_t>(gen() % 2);
    p.dimensions.counts[1] = trust;
    p.dimensions.counts[6] = static_cast<std::uint32_t>(gen() % 2);
    p.triangle_overlap = static_cast<double>(p.dimensions.total()) / 5.0;
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(Folds, PartitionAndStratification) {
  std::mt19937_64 gen(1);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 100 + gen() % 500;
    std::vector<bool> labels(n);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = gen() % 3 == 0;
      pos += labels[i];
    }
    if (pos < 10 || n - pos < 10) continue;
    const auto fold = stratified_folds(labels, 10, t);
    std::vector<std::size_t> fp(10), fn(10);
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_LT(fold[i], 10u);
      (labels[i] ? fp : fn)[fold[i]]++;
    }
    for (std::size_t f = 0; f < 10; ++f) {
      EXPECT_LE(std::abs(static_cast<double>(fp[f]) - pos / 10.0), 2.0);
      EXPECT_LE(std::abs(static_cast<double>(fn[f]) - (n - pos) / 10.0), 2.0);
    }
  }
}

TEST(Folds, Validation) {
  EXPECT_THROW(stratified_folds({true, false}, 1, 0), ValidationError);
  EXPECT_THROW(stratified_folds({true, true, true, false}, 2, 0), ValidationError);
}

TEST(CrossValidate, ReportShapeAndRanges) {
  EvalConfig cfg;
  cfg.folds = 5;
  cfg.forest.n_trees = 20;
  cfg.seed = 3;
  const EvalReport r = cross_validate(toy_pairs(100, 100, 1), cfg);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].set, FeatureSet::triangle_overlap);
  EXPECT_EQ(r.rows[1].set, FeatureSet::dimensions);
  EXPECT_EQ(r.rows[2].set, FeatureSet::combined);
  for (const auto& row : r.rows) {
    ASSERT_EQ(row.folds.size(), 5u);
    for (const Metrics& m : row.folds) {
      for (double v : {m.precision, m.accuracy, m.auc}) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
    double mean_auc = 0;
    for (const Metrics& m : row.folds) mean_auc += m.auc / 5;
    EXPECT_NEAR(row.mean.auc, mean_auc, 1e-12);
  }
  EXPECT_EQ(r.importances.size(), kDimensionVectorSize);
  double sum = 0;
  for (double w : r.importances) sum += w;
  EXPECT_NEAR(sum, 1.0, 1e-9);
}

TEST(CrossValidate, Deterministic) {
  EvalConfig cfg;
  cfg.folds = 4;
  cfg.forest.n_trees = 15;
  cfg.seed = 11;
  const auto pairs = toy_pairs(60, 60, 2);
  std::ostringstream a;
  std::ostringstream b;
  write_report_jsonl(a, cross_validate(pairs, cfg));
  write_report_jsonl(b, cross_validate(pairs, cfg));
  EXPECT_EQ(a.str(), b.str());
}

TEST(CrossValidate, RejectsBadFolds) {
  EvalConfig cfg;
  cfg.folds = 1;
  EXPECT_THROW(cross_validate(toy_pairs(10, 10, 1), cfg), ValidationError);
  cfg.folds = 10;
  EXPECT_THROW(cross_validate(toy_pairs(5, 20, 1), cfg), ValidationError);
}

TEST(Report, TextHasTableShape) {
  EvalConfig cfg;
  cfg.folds = 3;
  cfg.forest.n_trees = 5;
  cfg.seed = 1;
  EvalReport r = cross_validate(toy_pairs(30, 30, 3), cfg);
  r.metadata = {{"config_digest", "abc"}};
  std::ostringstream out;
  write_report_text(out, r);
  const std::string s = out.str();
  for (const char* needle : {"Precision", "Accuracy", "AUC", "Triangle overlap", "Relationship dimensions", "All",
                             "config_digest: abc", "version:", "trees=5"}) {
    EXPECT_NE(s.find(needle), std::string::npos) << needle;
  }
  EXPECT_LT(s.find("Triangle overlap"), s.find("Relationship dimensions"));
  EXPECT_LT(s.find("Relationship dimensions  "), s.find("\nAll"));
}

TEST(Report, JsonlRecords) {
  EvalConfig cfg;
  cfg.folds = 3;
  cfg.forest.n_trees = 5;
  cfg.seed = 1;
  const EvalReport r = cross_validate(toy_pairs(30, 30, 3), cfg);
  std::ostringstream out;
  write_report_jsonl(out, r);
  std::istringstream in(out.str());
  std::string line;
  std::map<std::string, int> kinds;
  nlohmann::json importance;
  while (std::getline(in, line)) {
    const auto rec = nlohmann::json::parse(line);
    kinds[rec.at("record").get<std::string>()]++;
    if (rec["record"] == "importance") importance = rec;
  }
  EXPECT_EQ(kinds["header"], 1);
  EXPECT_EQ(kinds["fold"], 9);
  EXPECT_EQ(kinds["mean"], 3);
  EXPECT_EQ(kinds["importance"], 1);
  EXPECT_EQ(importance["features"].size(), kDimensionVectorSize);
  EXPECT_EQ(importance["weights"].size(), kDimensionVectorSize);
}
