#include "reldim/sampling.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "reldim/error.hpp"
#include "reldim/rng.hpp"

namespace reldim {

std::vector<std::pair<NodeIndex, NodeIndex>> two_hop_candidates(const CommGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::pair<NodeIndex, NodeIndex>> out;
  // blocked[x] == u+1: x is u or an out-neighbor of u; seen[x] == u+1: already emitted.
  std::vector<std::size_t> blocked(n, 0);
  std::vector<std::size_t> seen(n, 0);
  std::vector<NodeIndex> row;
  for (NodeIndex u = 0; u < n; ++u) {
    const std::size_t stamp = static_cast<std::size_t>(u) + 1;
    blocked[u] = stamp;
    for (NodeIndex w : g.out_neighbors(u)) blocked[w] = stamp;
    row.clear();
    for (NodeIndex w : g.out_neighbors(u)) {
      for (NodeIndex v : g.out_neighbors(w)) {
        if (blocked[v] == stamp || seen[v] == stamp) continue;
        seen[v] = stamp;
        row.push_back(v);
      }
    }
    std::sort(row.begin(), row.end());
    for (NodeIndex v : row) out.emplace_back(u, v);
  }
  return out;
}

namespace {

std::uint64_t pair_key(NodeIndex u, NodeIndex v) { return (static_cast<std::uint64_t>(u) << 32) | v; }

std::vector<std::pair<NodeIndex, NodeIndex>> sample_negatives_by_rejection(const CommGraph& g,
                                                                            std::size_t n_neg, Rng& rng,
                                                                            const SamplingOptions& options) {
  std::vector<std::pair<NodeIndex, NodeIndex>> out;
  if (g.edge_count() == 0) return out;
  std::unordered_set<std::uint64_t> taken;
  const std::size_t budget = n_neg * options.attempts_per_negative;
  for (std::size_t attempt = 0; attempt < budget && out.size() < n_neg; ++attempt) {
    const Edge& first = g.edge(static_cast<EdgeId>(rng.below(g.edge_count())));
    const auto next = g.out_neighbors(first.dst);
    if (next.empty()) continue;
    const NodeIndex v = next[rng.below(next.size())];
    if (v == first.src || g.has_edge(first.src, v)) continue;
    if (!taken.insert(pair_key(first.src, v)).second) continue;
    out.emplace_back(first.src, v);
  }
  return out;
}

}  // namespace

std::vector<PairSample> sample_pairs(const CommGraph& g, std::size_t n_pos, std::size_t n_neg,
                                     std::uint64_t seed, const SamplingOptions& options) {
  Rng pos_rng(derive_seed(seed, 1));
  Rng neg_rng(derive_seed(seed, 2));

  std::vector<std::pair<NodeIndex, NodeIndex>> negatives;
  if (g.node_count() < options.exhaustive_node_limit) {
    auto candidates = two_hop_candidates(g);
    for (std::size_t i : neg_rng.sample_without_replacement(candidates.size(), n_neg)) {
      negatives.push_back(candidates[i]);
    }
  } else {
    negatives = sample_negatives_by_rejection(g, n_neg, neg_rng, options);
  }

  const std::size_t pos_available = std::min(n_pos, g.edge_count());
  if (pos_available < n_pos || negatives.size() < n_neg) {
    throw ShortfallError("pair sampling shortfall: wanted " + std::to_string(n_pos) + " positives and " +
                             std::to_string(n_neg) + " negatives, reached " +
                             std::to_string(pos_available) + " and " + std::to_string(negatives.size()),
                         pos_available, negatives.size());
  }

  std::vector<PairSample> pairs;
  pairs.reserve(n_pos + n_neg);
  for (std::size_t e : pos_rng.sample_without_replacement(g.edge_count(), n_pos)) {
    const Edge& edge = g.edge(static_cast<EdgeId>(e));
    pairs.push_back(PairSample{edge.src, edge.dst, true, 0, 0.0, {}});
  }
  for (const auto& [u, v] : negatives) pairs.push_back(PairSample{u, v, false, 0, 0.0, {}});
  for (PairSample& p : pairs) p.out_degree = static_cast<std::uint32_t>(g.out_neighbors(p.u).size());
  return pairs;
}

void attach_features(const CommGraph& g, const EdgeLabels& labels, std::vector<PairSample>& pairs,
                     DimensionSource source) {
  for (PairSample& p : pairs) {
    p.out_degree = static_cast<std::uint32_t>(g.out_neighbors(p.u).size());
    p.triangle_overlap = triangle_overlap(g, p.u, p.v);
    p.dimensions = dimension_vector(g, labels, p.u, p.v, source);
  }
}

Dataset make_dataset(const std::vector<PairSample>& pairs, FeatureSet set, const FeatureOptions& options) {
  Dataset d;
  d.names = feature_names(set);
  d.feature_count = d.names.size();
  d.features.reserve(pairs.size() * d.feature_count);
  d.labels.reserve(pairs.size());
  for (const PairSample& p : pairs) {
    if (set != FeatureSet::dimensions) d.features.push_back(p.triangle_overlap);
    if (set != FeatureSet::triangle_overlap) {
      const double scale =
          options.normalize_dimensions && p.out_degree > 0 ? 1.0 / static_cast<double>(p.out_degree) : 1.0;
      for (std::uint32_t c : p.dimensions.counts) d.features.push_back(static_cast<double>(c) * scale);
    }
    d.labels.push_back(p.positive);
  }
  return d;
}

void write_pairs(std::ostream& out, const CommGraph& g, const std::vector<PairSample>& pairs) {
  for (const PairSample& p : pairs) {
    nlohmann::json record = {
        {"u", g.id(p.u)},
        {"v", g.id(p.v)},
        {"label", p.positive ? 1 : 0},
        {"out_degree", p.out_degree},
        {"to", p.triangle_overlap},
        {"dimensions", p.dimensions.counts},
    };
    out << record.dump() << '\n';
  }
}

LoadedPairs read_pairs(std::istream& in) {
  LoadedPairs out;
  std::unordered_map<std::string, NodeIndex> index;
  auto node = [&](const std::string& id) {
    auto [it, inserted] = index.try_emplace(id, static_cast<NodeIndex>(out.ids.size()));
    if (inserted) out.ids.push_back(id);
    return it->second;
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      PairSample p;
      p.u = node(j.at("u").get<std::string>());
      p.v = node(j.at("v").get<std::string>());
      p.positive = j.at("label").get<int>() != 0;
      p.out_degree = j.at("out_degree").get<std::uint32_t>();
      p.triangle_overlap = j.at("to").get<double>();
      const auto counts = j.at("dimensions").get<std::vector<std::uint32_t>>();
      if (counts.size() != kDimensionVectorSize) throw ParseError("dimension vector has wrong length", line_no);
      std::copy(counts.begin(), counts.end(), p.dimensions.counts.begin());
      out.pairs.push_back(p);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid pair record: ") + e.what(), line_no);
    }
  }
  return out;
}

}  // namespace reldim
