#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "reldim/error.hpp"
#include "reldim/labeling.hpp"
#include "reldim/sampling.hpp"
#include "reldim/synth_graph.hpp"

using namespace reldim;

namespace {

CommGraph from_edges(const std::vector<std::pair<std::string, std::string>>& edges) {
  GraphBuilder b;
  for (const auto& [u, v] : edges) b.add_message(u, v, "trust");
  return std::move(b).build();
}

CommGraph synth(std::size_t n, double density, std::uint64_t seed) {
  SynthParams p;
  p.n_nodes = n;
  p.base_density = density;
  p.closure[static_cast<std::size_t>(Dimension::trust)] = 0.2;
  return synth_graph(p, demo_lexicon(), seed).graph;
}

bool has_two_hop(const CommGraph& g, NodeIndex u, NodeIndex v) {
  for (NodeIndex w : g.out_neighbors(u)) {
    if (g.has_edge(w, v)) return true;
  }
  return false;
}

void check_invariants(const CommGraph& g, const std::vector<PairSample>& pairs, std::size_t n_pos, std::size_t n_neg) {
  std::set<std::pair<NodeIndex, NodeIndex>> seen;
  std::size_t pos = 0;
  std::size_t neg = 0;
  for (const PairSample& p : pairs) {
    ASSERT_TRUE(seen.emplace(p.u, p.v).second) << "duplicate pair";
    ASSERT_NE(p.u, p.v);
    if (p.positive) {
      ++pos;
      ASSERT_TRUE(g.has_edge(p.u, p.v));
    } else {
      ++neg;
      ASSERT_FALSE(g.has_edge(p.u, p.v));
      ASSERT_TRUE(has_two_hop(g, p.u, p.v));
    }
  }
  EXPECT_EQ(pos, n_pos);
  EXPECT_EQ(neg, n_neg);
}

}  // namespace

TEST(TwoHop, PathGraphHasOneCandidate) {
  const CommGraph g = from_edges({{"a", "b"}, {"b", "c"}});
  const auto c = two_hop_candidates(g);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(g.id(c[0].first), "a");
  EXPECT_EQ(g.id(c[0].second), "c");
}

TEST(SamplePairs, PathGraph) {
  const CommGraph g = from_edges({{"a", "b"}, {"b", "c"}});
  const auto pairs = sample_pairs(g, 2, 1, 1);
  check_invariants(g, pairs, 2, 1);
}

TEST(SamplePairs, CompleteGraphHasNoNegatives) {
  std::vector<std::pair<std::string, std::string>> e;
  for (const char* u : {"a", "b", "c", "d"}) {
    for (const char* v : {"a", "b", "c", "d"}) {
      if (std::string(u) != v) e.emplace_back(u, v);
    }
  }
  const CommGraph g = from_edges(e);
  try {
    sample_pairs(g, 3, 1, 1);
    FAIL() << "expected ShortfallError";
  } catch (const ShortfallError& err) {
    EXPECT_EQ(err.achieved_positives(), 3u);
    EXPECT_EQ(err.achieved_negatives(), 0u);
  }
}

TEST(SamplePairs, TooFewPositives) {
  const CommGraph g = from_edges({{"a", "b"}, {"b", "c"}});
  EXPECT_THROW(sample_pairs(g, 5, 1, 1), ShortfallError);
}

TEST(SamplePairs, Deterministic) {
  const CommGraph g = synth(400, 0.02, 3);
  EXPECT_EQ(sample_pairs(g, 300, 300, 17), sample_pairs(g, 300, 300, 17));
  EXPECT_NE(sample_pairs(g, 300, 300, 17), sample_pairs(g, 300, 300, 18));
}

TEST(SamplePairs, ExhaustiveInvariants) {
  const CommGraph g = synth(400, 0.02, 4);
  check_invariants(g, sample_pairs(g, 500, 500, 2), 500, 500);
}

TEST(SamplePairs, RejectionInvariants) {
  const CommGraph g = synth(400, 0.02, 5);
  SamplingOptions opts;
  opts.exhaustive_node_limit = 0;
  check_invariants(g, sample_pairs(g, 500, 500, 2, opts), 500, 500);
}

TEST(SamplePairs, AllEdgesWhenAskedForAll) {
  const CommGraph g = synth(100, 0.03, 6);
  const auto c = two_hop_candidates(g);
  const auto pairs = sample_pairs(g, g.edge_count(), c.size(), 1);
  check_invariants(g, pairs, g.edge_count(), c.size());
}

TEST(AttachFeatures, FillsToAndDimensions) {
  const CommGraph g = synth(300, 0.02, 7);
  const auto labels = label_graph(g, demo_lexicon()).labels;
  auto pairs = sample_pairs(g, 200, 200, 1);
  attach_features(g, labels, pairs);
  for (const auto& p : pairs) {
    EXPECT_EQ(p.out_degree, g.out_neighbors(p.u).size());
    EXPECT_DOUBLE_EQ(p.triangle_overlap, triangle_overlap(g, p.u, p.v));
    EXPECT_EQ(p.dimensions, dimension_vector(g, labels, p.u, p.v));
  }
}

TEST(Dataset, ColumnsPerFeatureSet) {
  PairSample p;
  p.positive = true;
  p.out_degree = 4;
  p.triangle_overlap = 0.5;
  p.dimensions.counts = {1, 1, 0, 0, 0, 0, 0, 0};
  const std::vector<PairSample> pairs{p};
  const Dataset to = make_dataset(pairs, FeatureSet::triangle_overlap);
  EXPECT_EQ(to.feature_count, 1u);
  EXPECT_EQ(to.row(0)[0], 0.5);
  const Dataset d = make_dataset(pairs, FeatureSet::dimensions);
  EXPECT_EQ(d.feature_count, kDimensionVectorSize);
  EXPECT_EQ(d.row(0)[0], 1.0);
  FeatureOptions norm;
  norm.normalize_dimensions = true;
  EXPECT_EQ(make_dataset(pairs, FeatureSet::dimensions, norm).row(0)[1], 0.25);
  const Dataset all = make_dataset(pairs, FeatureSet::combined);
  EXPECT_EQ(all.feature_count, kDimensionVectorSize + 1);
  EXPECT_EQ(all.names, feature_names(FeatureSet::combined));
  EXPECT_TRUE(all.labels[0]);
}

TEST(PairsFile, RoundTrip) {
  const CommGraph g = synth(300, 0.02, 8);
  const auto labels = label_graph(g, demo_lexicon()).labels;
  auto pairs = sample_pairs(g, 100, 100, 1);
  attach_features(g, labels, pairs);
  std::ostringstream out;
  write_pairs(out, g, pairs);
  std::istringstream in(out.str());
  const LoadedPairs loaded = read_pairs(in);
  ASSERT_EQ(loaded.pairs.size(), pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    EXPECT_EQ(loaded.ids[loaded.pairs[i].u], g.id(pairs[i].u));
    EXPECT_EQ(loaded.ids[loaded.pairs[i].v], g.id(pairs[i].v));
    EXPECT_EQ(loaded.pairs[i].positive, pairs[i].positive);
    EXPECT_EQ(loaded.pairs[i].triangle_overlap, pairs[i].triangle_overlap);
    EXPECT_EQ(loaded.pairs[i].dimensions, pairs[i].dimensions);
    EXPECT_EQ(loaded.pairs[i].out_degree, pairs[i].out_degree);
  }
}
