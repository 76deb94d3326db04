#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "reldim/features.hpp"
#include "reldim/graph.hpp"

namespace reldim {

struct PairSample {
  NodeIndex u = 0;
  NodeIndex v = 0;
  bool positive = false;
  std::uint32_t out_degree = 0;  // |Γ_out(u)|
  double triangle_overlap = 0.0;
  DimensionVector dimensions;

  friend bool operator==(const PairSample&, const PairSample&) = default;
};

struct SamplingOptions {
  // Graphs with fewer nodes enumerate every negative candidate; larger graphs
  // use rejection sampling over random 2-paths.
  std::size_t exhaustive_node_limit = 10000;
  // Rejection sampling gives up after this many draws per requested negative.
  std::size_t attempts_per_negative = 200;
};

// Every ordered pair (u, v), u != v, with no u->v edge and some u->w->v,
// sorted by (u, v).
std::vector<std::pair<NodeIndex, NodeIndex>> two_hop_candidates(const CommGraph& g);

// Positives uniformly without replacement from the edges; negatives without
// replacement from 2-hop disconnected pairs. Positives come first. Features
// are left empty; see attach_features. Throws ShortfallError with the counts
// reached when either class cannot be filled.
std::vector<PairSample> sample_pairs(const CommGraph& g, std::size_t n_pos, std::size_t n_neg,
                                     std::uint64_t seed, const SamplingOptions& options = {});

void attach_features(const CommGraph& g, const EdgeLabels& labels, std::vector<PairSample>& pairs,
                     DimensionSource source = DimensionSource::first_edge);

// Row-major feature matrix for one feature set.
struct Dataset {
  std::size_t feature_count = 0;
  std::vector<double> features;
  std::vector<bool> labels;
  std::vector<std::string> names;

  std::size_t size() const noexcept { return labels.size(); }
  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * feature_count, feature_count};
  }
};

Dataset make_dataset(const std::vector<PairSample>& pairs, FeatureSet set,
                     const FeatureOptions& options = {});

// Line-delimited JSON: {"u","v","label","out_degree","to","dimensions":[...]}
// using node
// ids from g.
void write_pairs(std::ostream& out, const CommGraph& g, const std::vector<PairSample>& pairs);

// Reads write_pairs output. Node indexes are assigned in order of appearance;
// ids are returned alongside.
struct LoadedPairs {
  std::vector<PairSample> pairs;
  std::vector<std::string> ids;
};
LoadedPairs read_pairs(std::istream& in);

}  // namespace reldim
