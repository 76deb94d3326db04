#include <gtest/gtest.h>

#include <sstream>

#include "reldim/error.hpp"
#include "reldim/graph_io.hpp"
#include "reldim/synth_graph.hpp"

using namespace reldim;

namespace {

std::size_t slot(Dimension d) { return static_cast<std::size_t>(d); }

std::string serialize(const CommGraph& g) {
  std::ostringstream out;
  write_edge_messages(out, g);
  return out.str();
}

}  // namespace

TEST(SynthGraph, NoClosureMeansSeedOnly) {
  SynthParams p;
  p.n_nodes = 500;
  p.base_density = 0.01;
  const SynthResult s = synth_graph(p, demo_lexicon(), 3);
  EXPECT_EQ(s.graph.edge_count(), s.truth.seed_edges);
  for (bool c : s.truth.closure_edge) EXPECT_FALSE(c);
  EXPECT_GT(s.graph.edge_count(), 1500u);
}

TEST(SynthGraph, ClosureProbabilityOneClosesEveryTrustPath) {
  SynthParams p;
  p.n_nodes = 300;
  p.base_density = 0.004;
  p.closure[slot(Dimension::trust)] = 1.0;
  p.max_edges = 200000;
  const SynthResult s = synth_graph(p, demo_lexicon(), 5);
  const CommGraph& g = s.graph;
  std::size_t checked = 0;
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    const auto out = g.out_neighbors(u);
    const auto ids = g.out_edge_ids(u);
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (s.truth.planted[ids[k]] != Dimension::trust) continue;
      for (NodeIndex v : g.out_neighbors(out[k])) {
        if (v == u) continue;
        ++checked;
        ASSERT_TRUE(g.has_edge(u, v)) << g.id(u) << " -> " << g.id(out[k]) << " -> " << g.id(v);
      }
    }
  }
  EXPECT_GT(checked, 50u);
}

TEST(SynthGraph, SameSeedIdentical) {
  SynthParams p = demo_synth_params();
  p.n_nodes = 800;
  const SynthResult a = synth_graph(p, demo_lexicon(), 7);
  const SynthResult b = synth_graph(p, demo_lexicon(), 7);
  EXPECT_EQ(serialize(a.graph), serialize(b.graph));
  EXPECT_EQ(a.truth.planted, b.truth.planted);
  EXPECT_NE(serialize(a.graph), serialize(synth_graph(p, demo_lexicon(), 8).graph));
}

TEST(SynthGraph, ClosureOnWordlessDimensionIsConfigError) {
  SynthParams p;
  p.closure[slot(Dimension::knowledge)] = 0.5;
  EXPECT_THROW(synth_graph(p, demo_lexicon(), 1), ConfigError);
  Lexicon lex;
  lex.add({Dimension::fun, Polarity::positive, {"lol"}});
  SynthParams q;
  q.closure[slot(Dimension::trust)] = 0.5;
  EXPECT_THROW(synth_graph(q, lex, 1), ConfigError);
}

TEST(SynthGraph, ProbabilitiesValidated) {
  SynthParams p;
  p.base_density = 1.5;
  EXPECT_THROW(synth_graph(p, demo_lexicon(), 1), ConfigError);
  SynthParams q;
  q.closure[slot(Dimension::trust)] = -0.1;
  EXPECT_THROW(synth_graph(q, demo_lexicon(), 1), ConfigError);
  SynthParams tiny;
  tiny.n_nodes = 2;
  EXPECT_THROW(synth_graph(tiny, demo_lexicon(), 1), ConfigError);
}

TEST(SynthGraph, RunawayGuard) {
  SynthParams p;
  p.n_nodes = 400;
  p.base_density = 0.02;
  for (Dimension d : kLexiconDimensions) p.closure[slot(d)] = 0.5;
  p.max_edges = 20000;
  EXPECT_THROW(synth_graph(p, demo_lexicon(), 1), ConfigError);
}

TEST(SynthGraph, PlantedTruthShape) {
  SynthParams p = demo_synth_params();
  p.n_nodes = 1000;
  const SynthResult s = synth_graph(p, demo_lexicon(), 2);
  ASSERT_EQ(s.truth.planted.size(), s.graph.edge_count());
  ASSERT_EQ(s.truth.closure_edge.size(), s.graph.edge_count());
  std::size_t untyped = 0;
  for (const auto& d : s.truth.planted) {
    if (!d) {
      ++untyped;
    } else {
      EXPECT_TRUE(is_lexicon_bearing(*d));
    }
  }
  const double frac = static_cast<double>(untyped) / s.graph.edge_count();
  EXPECT_NEAR(frac, p.untyped_fraction, 0.03);
  for (double c : s.truth.closure) {
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
  }
}

TEST(SynthGraph, WeightsRestrictPlantedDimensions) {
  SynthParams p;
  p.n_nodes = 300;
  p.base_density = 0.02;
  p.dimension_weights[slot(Dimension::trust)] = 1.0;
  const SynthResult s = synth_graph(p, demo_lexicon(), 4);
  for (const auto& d : s.truth.planted) EXPECT_EQ(d, Dimension::trust);
}
