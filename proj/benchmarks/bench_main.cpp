#include <benchmark/benchmark.h>

#include <random>

#include "reldim/blockmodel.hpp"
#include "reldim/correlation.hpp"
#include "reldim/features.hpp"
#include "reldim/forest.hpp"
#include "reldim/labeling.hpp"
#include "reldim/lexicon.hpp"
#include "reldim/sampling.hpp"
#include "reldim/synth_graph.hpp"
#include "reldim/synth_ratings.hpp"

using namespace reldim;

namespace {

const SynthResult& demo_graph() {
  static const SynthResult g = synth_graph(demo_synth_params(), demo_lexicon(), 1);
  return g;
}

void BM_SpearmanMatrix(benchmark::State& state) {
  const auto words = static_cast<std::size_t>(state.range(0));
  const RatingMatrix r = uniform_ratings(words, 100, 1);
  for (auto _ : state) benchmark::DoNotOptimize(spearman_matrix(r));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SpearmanMatrix)->Arg(55)->Arg(110)->Arg(220)->Complexity();

void BM_Blockmodel(benchmark::State& state) {
  PlantedBlockParams p;
  p.words_per_block = static_cast<std::size_t>(state.range(0));
  const auto planted = planted_block_ratings(p, 1);
  const CorrelationMatrix m = spearman_matrix(planted.matrix);
  for (auto _ : state) benchmark::DoNotOptimize(blockmodel(m));
}
BENCHMARK(BM_Blockmodel)->Arg(20)->Arg(110)->Unit(benchmark::kMillisecond);

void BM_TriangleOverlap(benchmark::State& state) {
  const CommGraph& g = demo_graph().graph;
  std::mt19937_64 gen(2);
  std::uniform_int_distribution<NodeIndex> node(0, static_cast<NodeIndex>(g.node_count() - 1));
  for (auto _ : state) benchmark::DoNotOptimize(triangle_overlap(g, node(gen), node(gen)));
}
BENCHMARK(BM_TriangleOverlap);

void BM_DimensionVector(benchmark::State& state) {
  const CommGraph& g = demo_graph().graph;
  static const EdgeLabels labels = label_graph(g, demo_lexicon()).labels;
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<NodeIndex> node(0, static_cast<NodeIndex>(g.node_count() - 1));
  for (auto _ : state) benchmark::DoNotOptimize(dimension_vector(g, labels, node(gen), node(gen)));
}
BENCHMARK(BM_DimensionVector);

void BM_LabelGraph(benchmark::State& state) {
  const CommGraph& g = demo_graph().graph;
  const Lexicon lex = demo_lexicon();
  for (auto _ : state) benchmark::DoNotOptimize(label_graph(g, lex));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.edge_count()));
}
BENCHMARK(BM_LabelGraph)->Unit(benchmark::kMillisecond);

void BM_TrainForest(benchmark::State& state) {
  const CommGraph& g = demo_graph().graph;
  static const EdgeLabels labels = label_graph(g, demo_lexicon()).labels;
  auto pairs = sample_pairs(g, 2000, 2000, 4);
  attach_features(g, labels, pairs);
  const Dataset d = make_dataset(pairs, FeatureSet::combined);
  ForestParams fp;
  fp.n_trees = static_cast<std::size_t>(state.range(0));
  fp.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(train_forest(d, fp, 5));
}
BENCHMARK(BM_TrainForest)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
