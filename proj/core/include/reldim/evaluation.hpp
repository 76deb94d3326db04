#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "reldim/features.hpp"
#include "reldim/forest.hpp"
#include "reldim/sampling.hpp"

namespace reldim {

// Fold index per sample. Each class is shuffled separately and dealt
// round-robin, the negatives continuing where the positives stopped, so every
// fold's class counts are within one of the global share. Throws
// ValidationError if k < 2 or a class has fewer than k members.
std::vector<std::size_t> stratified_folds(const std::vector<bool>& labels, std::size_t k,
                                          std::uint64_t seed);

struct Metrics {
  double precision = 0.0;
  double accuracy = 0.0;
  double auc = 0.0;
};

struct FeatureSetResult {
  FeatureSet set = FeatureSet::triangle_overlap;
  std::vector<Metrics> folds;
  Metrics mean;
};

struct EvalConfig {
  std::size_t folds = 10;
  ForestParams forest;
  FeatureOptions features;
  std::uint64_t seed = 0;
  std::vector<FeatureSet> sets{kAllFeatureSets.begin(), kAllFeatureSets.end()};
};

struct EvalReport {
  EvalConfig config;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::vector<FeatureSetResult> rows;
  // Fold-averaged importances of the dimensions-only model.
  std::vector<std::string> importance_names;
  std::vector<double> importances;
  // Extra provenance written verbatim into the report (config digest, input
  // sizes, ...). Kept in insertion order.
  std::vector<std::pair<std::string, std::string>> metadata;

  const FeatureSetResult* find(FeatureSet s) const;
};

// Stratified k-fold evaluation of one forest per feature set and fold.
EvalReport cross_validate(const std::vector<PairSample>& pairs, const EvalConfig& config);

// Aligned columns, one row per feature set, gains relative to the triangle
// overlap row, then importances.
void write_report_text(std::ostream& out, const EvalReport& r);
// One JSON object per line: a header record, per-fold records, mean records
// and an importance record.
void write_report_jsonl(std::ostream& out, const EvalReport& r);

}  // namespace reldim
