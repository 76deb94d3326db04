#include "reldim/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "reldim/error.hpp"
#include "reldim/metrics.hpp"
#include "reldim/rng.hpp"
#include "reldim/version.hpp"

namespace reldim {

std::vector<std::size_t> stratified_folds(const std::vector<bool>& labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ValidationError("fold count must be at least 2");
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] ? pos : neg).push_back(i);
  if (pos.size() < k || neg.size() < k) {
    throw ValidationError("stratification needs at least " + std::to_string(k) +
                          " samples of each class (have " + std::to_string(pos.size()) + " positive, " +
                          std::to_string(neg.size()) + " negative)");
  }
  Rng rng(seed);
  rng.shuffle(pos);
  rng.shuffle(neg);
  std::vector<std::size_t> fold(labels.size());
  std::size_t next = 0;
  for (std::size_t i : pos) fold[i] = next++ % k;
  for (std::size_t i : neg) fold[i] = next++ % k;
  return fold;
}

const FeatureSetResult* EvalReport::find(FeatureSet s) const {
  for (const FeatureSetResult& r : rows) {
    if (r.set == s) return &r;
  }
  return nullptr;
}

EvalReport cross_validate(const std::vector<PairSample>& pairs, const EvalConfig& config) {
  if (config.folds < 2) throw ValidationError("fold count must be at least 2");
  if (pairs.size() < config.folds) throw ValidationError("fewer samples than folds");

  EvalReport report;
  report.config = config;
  std::vector<bool> labels;
  labels.reserve(pairs.size());
  for (const PairSample& p : pairs) {
    labels.push_back(p.positive);
    ++(p.positive ? report.positives : report.negatives);
  }
  const auto fold = stratified_folds(labels, config.folds, derive_seed(config.seed, 0xf01d));

  for (std::size_t s = 0; s < config.sets.size(); ++s) {
    const FeatureSet set = config.sets[s];
    const Dataset data = make_dataset(pairs, set, config.features);
    FeatureSetResult result;
    result.set = set;
    std::vector<double> importance_sum(data.feature_count, 0.0);

    for (std::size_t f = 0; f < config.folds; ++f) {
      std::vector<std::size_t> train;
      std::vector<std::size_t> test;
      for (std::size_t i = 0; i < pairs.size(); ++i) (fold[i] == f ? test : train).push_back(i);
      const ForestModel model =
          train_forest(data, train, config.forest, derive_seed(config.seed, f, static_cast<std::size_t>(set)));

      std::vector<double> scores;
      std::vector<bool> truth;
      scores.reserve(test.size());
      truth.reserve(test.size());
      for (std::size_t i : test) {
        scores.push_back(predict_forest(model, data.row(i)));
        truth.push_back(data.labels[i]);
      }
      const Confusion c = confusion(scores, truth);
      result.folds.push_back(Metrics{precision(c), accuracy(c), auc(scores, truth)});

      const auto w = feature_importance(model);
      for (std::size_t j = 0; j < w.size(); ++j) importance_sum[j] += w[j];
    }

    for (const Metrics& m : result.folds) {
      result.mean.precision += m.precision;
      result.mean.accuracy += m.accuracy;
      result.mean.auc += m.auc;
    }
    const auto k = static_cast<double>(config.folds);
    result.mean.precision /= k;
    result.mean.accuracy /= k;
    result.mean.auc /= k;

    if (set == FeatureSet::dimensions) {
      report.importance_names = data.names;
      report.importances.resize(importance_sum.size());
      for (std::size_t j = 0; j < importance_sum.size(); ++j) report.importances[j] = importance_sum[j] / k;
    }
    report.rows.push_back(std::move(result));
  }
  return report;
}

namespace {

std::string fixed(double v, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string with_gain(double v, double base) {
  std::string s = fixed(v);
  if (base > 0.0) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%+.1f%%)", 100.0 * (v - base) / base);
    s += buf;
  }
  return s;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

nlohmann::json forest_json(const ForestParams& p) {
  return {{"n_trees", p.n_trees},
          {"max_depth", p.max_depth},
          {"min_samples_leaf", p.min_samples_leaf},
          {"max_features", p.max_features},
          {"bootstrap", "n with replacement"},
          {"criterion", "gini"},
          {"vote", "fraction of trees, threshold 0.5"}};
}

}  // namespace

void write_report_text(std::ostream& out, const EvalReport& r) {
  const auto& c = r.config;
  out << "reldim link prediction report\n"
      << "version: " << kVersion << '\n'
      << "seed: " << c.seed << '\n'
      << "folds: " << c.folds << " (stratified)\n"
      << "forest: trees=" << c.forest.n_trees
      << " max_depth=" << (c.forest.max_depth == 0 ? std::string("unlimited") : std::to_string(c.forest.max_depth))
      << " min_samples_leaf=" << c.forest.min_samples_leaf << " max_features="
      << (c.forest.max_features == 0 ? std::string("ceil(sqrt(F))") : std::to_string(c.forest.max_features))
      << " criterion=gini\n"
      << "dimension_source: "
      << (c.features.source == DimensionSource::first_edge ? "first_edge" : "second_edge")
      << " normalize_dimensions: " << (c.features.normalize_dimensions ? "true" : "false") << '\n'
      << "pairs: " << r.positives << " positive, " << r.negatives << " negative\n";
  for (const auto& [key, value] : r.metadata) out << key << ": " << value << '\n';
  out << '\n';

  const FeatureSetResult* base = r.find(FeatureSet::triangle_overlap);
  constexpr std::size_t kName = 26;
  constexpr std::size_t kCol = 18;
  out << pad("Features", kName) << pad("Precision", kCol) << pad("Accuracy", kCol) << "AUC\n";
  for (const FeatureSetResult& row : r.rows) {
    const bool relative = base && row.set != FeatureSet::triangle_overlap;
    auto cell = [&](double v, double b) { return relative ? with_gain(v, b) : fixed(v); };
    out << pad(std::string(display_name(row.set)), kName)
        << pad(cell(row.mean.precision, base ? base->mean.precision : 0.0), kCol)
        << pad(cell(row.mean.accuracy, base ? base->mean.accuracy : 0.0), kCol)
        << cell(row.mean.auc, base ? base->mean.auc : 0.0) << '\n';
  }
  if (!r.importances.empty()) {
    out << "\nFeature importances (relationship dimensions model, mean over folds)\n";
    for (std::size_t i = 0; i < r.importances.size(); ++i) {
      out << pad(r.importance_names[i], kName) << fixed(r.importances[i], 4) << '\n';
    }
  }
}

void write_report_jsonl(std::ostream& out, const EvalReport& r) {
  using nlohmann::json;
  const auto& c = r.config;
  json meta = json::array();
  for (const auto& [key, value] : r.metadata) meta.push_back({key, value});
  json header = {
      {"record", "header"},
      {"version", std::string(kVersion)},
      {"seed", c.seed},
      {"folds", c.folds},
      {"forest", forest_json(c.forest)},
      {"dimension_source", c.features.source == DimensionSource::first_edge ? "first_edge" : "second_edge"},
      {"normalize_dimensions", c.features.normalize_dimensions},
      {"positives", r.positives},
      {"negatives", r.negatives},
      {"metadata", meta},
  };
  out << header.dump() << '\n';
  for (const FeatureSetResult& row : r.rows) {
    for (std::size_t f = 0; f < row.folds.size(); ++f) {
      const Metrics& m = row.folds[f];
      json rec = {{"record", "fold"},          {"features", std::string(to_string(row.set))},
                  {"fold", f},                 {"precision", m.precision},
                  {"accuracy", m.accuracy},    {"auc", m.auc}};
      out << rec.dump() << '\n';
    }
  }
  for (const FeatureSetResult& row : r.rows) {
    json rec = {{"record", "mean"},
                {"features", std::string(to_string(row.set))},
                {"precision", row.mean.precision},
                {"accuracy", row.mean.accuracy},
                {"auc", row.mean.auc}};
    out << rec.dump() << '\n';
  }
  if (!r.importances.empty()) {
    json rec = {{"record", "importance"},
                {"model", "dimensions"},
                {"features", r.importance_names},
                {"weights", r.importances}};
    out << rec.dump() << '\n';
  }
}

}  // namespace reldim
