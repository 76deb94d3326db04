#include "reldim/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "reldim/error.hpp"
#include "reldim/rng.hpp"

namespace reldim {

double DecisionTree::leaf_fraction(std::span<const double> row) const {
  std::uint32_t i = 0;
  while (nodes[i].feature >= 0) {
    const TreeNode& n = nodes[i];
    i = row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return nodes[i].positive_fraction;
}

namespace {

// Training rows collapsed to distinct feature vectors. Identical rows always
// follow the same path, so a tree grown on per-group class weights is exactly
// the tree grown on the bootstrap multiset.
struct GroupedRows {
  std::size_t feature_count = 0;
  std::vector<double> values;           // distinct rows, row-major
  std::vector<std::uint32_t> group_of;  // per training row
  std::vector<bool> positive;           // per training row

  std::size_t group_count() const { return feature_count ? values.size() / feature_count : 0; }
  double value(std::uint32_t g, std::size_t f) const { return values[g * feature_count + f]; }
};

GroupedRows group_rows(const Dataset& data, std::span<const std::size_t> rows) {
  GroupedRows out;
  out.feature_count = data.feature_count;
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto row_of = [&](std::size_t k) { return data.row(rows[k]); };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ra = row_of(a);
    const auto rb = row_of(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  });
  out.group_of.resize(rows.size());
  out.positive.resize(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto r = row_of(order[i]);
    if (i == 0 || !std::equal(r.begin(), r.end(), row_of(order[i - 1]).begin())) {
      out.values.insert(out.values.end(), r.begin(), r.end());
    }
    out.group_of[order[i]] = static_cast<std::uint32_t>(out.group_count() - 1);
  }
  for (std::size_t k = 0; k < rows.size(); ++k) out.positive[k] = data.labels[rows[k]];
  return out;
}

struct SplitCandidate {
  std::size_t feature = 0;
  double threshold = 0.0;
  double score = -1.0;  // sum over children of (p^2 + n^2) / N; larger is purer
};

class TreeGrower {
 public:
  TreeGrower(const GroupedRows& rows, const ForestParams& params, std::size_t mtry, std::uint64_t seed)
      : rows_(rows), params_(params), mtry_(mtry), rng_(seed) {}

  DecisionTree grow(std::vector<double>& decrease) {
    const std::size_t n = rows_.group_of.size();
    pos_.assign(rows_.group_count(), 0);
    neg_.assign(rows_.group_count(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = rng_.below(n);
      ++(rows_.positive[k] ? pos_ : neg_)[rows_.group_of[k]];
    }
    active_.clear();
    for (std::uint32_t g = 0; g < rows_.group_count(); ++g) {
      if (pos_[g] + neg_[g] > 0) active_.push_back(g);
    }
    total_ = static_cast<double>(n);
    decrease_.assign(rows_.feature_count, 0.0);
    features_.resize(rows_.feature_count);
    build(0, active_.size(), 0);

    const double sum = std::accumulate(decrease_.begin(), decrease_.end(), 0.0);
    if (sum > 0.0) {
      for (std::size_t f = 0; f < decrease_.size(); ++f) decrease[f] = decrease_[f] / sum;
    } else {
      std::fill(decrease.begin(), decrease.end(), 0.0);
    }
    return std::move(tree_);
  }

 private:
  std::uint32_t build(std::size_t begin, std::size_t end, std::size_t depth) {
    double wp = 0.0;
    double wn = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      wp += pos_[active_[i]];
      wn += neg_[active_[i]];
    }
    const double total = wp + wn;
    const auto id = static_cast<std::uint32_t>(tree_.nodes.size());
    tree_.nodes.push_back(TreeNode{-1, 0.0, 0, 0, total > 0 ? wp / total : 0.0});

    const double min_leaf = static_cast<double>(params_.min_samples_leaf);
    if (wp == 0.0 || wn == 0.0 || total < 2.0 * min_leaf ||
        (params_.max_depth != 0 && depth >= params_.max_depth)) {
      return id;
    }
    const auto best = find_split(begin, end, total);
    if (!best) return id;

    const double parent = (wp * wp + wn * wn) / total;
    decrease_[best->feature] += (best->score - parent) / total_;

    auto mid = std::stable_partition(active_.begin() + static_cast<std::ptrdiff_t>(begin),
                                     active_.begin() + static_cast<std::ptrdiff_t>(end), [&](std::uint32_t g) {
                                       return rows_.value(g, best->feature) <= best->threshold;
                                     });
    const auto split = static_cast<std::size_t>(mid - active_.begin());
    const std::uint32_t left = build(begin, split, depth + 1);
    const std::uint32_t right = build(split, end, depth + 1);
    TreeNode& node = tree_.nodes[id];
    node.feature = static_cast<std::int32_t>(best->feature);
    node.threshold = best->threshold;
    node.left = left;
    node.right = right;
    return id;
  }

  std::optional<SplitCandidate> find_split(std::size_t begin, std::size_t end, double total) {
    std::iota(features_.begin(), features_.end(), std::size_t{0});
    rng_.shuffle(features_);
    const double min_leaf = static_cast<double>(params_.min_samples_leaf);
    std::optional<SplitCandidate> best;
    std::size_t tried = 0;
    for (std::size_t f : features_) {
      if (tried >= mtry_ && best) break;
      scratch_.clear();
      for (std::size_t i = begin; i < end; ++i) {
        const std::uint32_t g = active_[i];
        scratch_.push_back({rows_.value(g, f), static_cast<double>(pos_[g]), static_cast<double>(neg_[g])});
      }
      std::sort(scratch_.begin(), scratch_.end(), [](const Cell& a, const Cell& b) { return a.value < b.value; });
      if (scratch_.front().value == scratch_.back().value) continue;
      ++tried;
      double lp = 0.0;
      double ln = 0.0;
      double tp = 0.0;
      double tn = 0.0;
      for (const Cell& c : scratch_) {
        tp += c.pos;
        tn += c.neg;
      }
      for (std::size_t i = 0; i + 1 < scratch_.size(); ++i) {
        lp += scratch_[i].pos;
        ln += scratch_[i].neg;
        if (scratch_[i].value == scratch_[i + 1].value) continue;
        const double nl = lp + ln;
        const double nr = total - nl;
        if (nl < min_leaf || nr < min_leaf) continue;
        const double rp = tp - lp;
        const double rn = tn - ln;
        const double score = (lp * lp + ln * ln) / nl + (rp * rp + rn * rn) / nr;
        if (!best || score > best->score) {
          const double lo = scratch_[i].value;
          const double hi = scratch_[i + 1].value;
          double threshold = lo + (hi - lo) / 2.0;
          if (threshold >= hi) threshold = lo;
          best = SplitCandidate{f, threshold, score};
        }
      }
    }
    return best;
  }

  struct Cell {
    double value;
    double pos;
    double neg;
  };

  const GroupedRows& rows_;
  const ForestParams& params_;
  std::size_t mtry_;
  Rng rng_;
  std::vector<std::uint32_t> pos_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> active_;
  std::vector<std::size_t> features_;
  std::vector<Cell> scratch_;
  std::vector<double> decrease_;
  double total_ = 0.0;
  DecisionTree tree_;
};

}  // namespace

ForestModel train_forest(const Dataset& data, std::span<const std::size_t> rows, const ForestParams& params,
                         std::uint64_t seed) {
  if (rows.empty()) throw ValidationError("cannot train a forest on empty data");
  if (data.feature_count == 0) throw ValidationError("cannot train a forest without features");
  if (params.n_trees == 0) throw ValidationError("forest needs at least one tree");
  if (params.min_samples_leaf == 0) throw ValidationError("min_samples_leaf must be at least 1");
  for (std::size_t r : rows) {
    if (r >= data.size()) throw ValidationError("training row out of range");
  }

  ForestModel model;
  model.params = params;
  model.seed = seed;
  model.feature_count = data.feature_count;
  const bool first = data.labels[rows.front()];
  model.degenerate = std::all_of(rows.begin(), rows.end(), [&](std::size_t r) { return data.labels[r] == first; });

  const GroupedRows grouped = group_rows(data, rows);
  const std::size_t F = data.feature_count;
  const std::size_t mtry =
      params.max_features != 0
          ? std::min(params.max_features, F)
          : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(F))));

  model.trees.resize(params.n_trees);
  std::vector<std::vector<double>> decreases(params.n_trees, std::vector<double>(F, 0.0));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < params.n_trees; t = next++) {
      TreeGrower grower(grouped, params, mtry, derive_seed(seed, t));
      model.trees[t] = grower.grow(decreases[t]);
    }
  };
  unsigned threads = params.threads != 0 ? params.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, params.n_trees));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  model.impurity_decrease.assign(F, 0.0);
  for (const auto& d : decreases) {
    for (std::size_t f = 0; f < F; ++f) model.impurity_decrease[f] += d[f];
  }
  for (double& v : model.impurity_decrease) v /= static_cast<double>(params.n_trees);
  return model;
}

ForestModel train_forest(const Dataset& data, const ForestParams& params, std::uint64_t seed) {
  std::vector<std::size_t> rows(data.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return train_forest(data, rows, params, seed);
}

double predict_forest(const ForestModel& m, std::span<const double> row) {
  if (row.size() != m.feature_count) {
    throw ValidationError("feature vector has " + std::to_string(row.size()) + " entries, model expects " +
                          std::to_string(m.feature_count));
  }
  if (m.trees.empty()) return 0.0;
  std::size_t votes = 0;
  for (const DecisionTree& t : m.trees) votes += t.votes_positive(row) ? 1 : 0;
  return static_cast<double>(votes) / static_cast<double>(m.trees.size());
}

std::vector<double> feature_importance(const ForestModel& m) {
  std::vector<double> w = m.impurity_decrease;
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  if (w.empty()) return w;
  if (!(sum > 0.0)) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(w.size()));
    return w;
  }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace reldim
