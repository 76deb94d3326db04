#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "reldim/blockmodel.hpp"
#include "reldim/correlation.hpp"
#include "reldim/evaluation.hpp"
#include "reldim/labeling.hpp"
#include "reldim/lexicon.hpp"
#include "reldim/ratings.hpp"
#include "reldim/synth_graph.hpp"

namespace reldim {

// Everything a link-prediction run depends on. Without graph_path the graph
// comes from synth; without lexicon_path the demo lexicon is used.
struct ExperimentConfig {
  std::optional<std::filesystem::path> graph_path;
  SynthParams synth = demo_synth_params();
  std::optional<std::filesystem::path> lexicon_path;
  std::size_t n_pos = 100000;
  std::size_t n_neg = 100000;
  MatchCounting counting = MatchCounting::occurrences;
  std::size_t folds = 10;
  ForestParams forest;
  FeatureOptions features;
  std::optional<std::uint64_t> seed;
  std::filesystem::path output_dir;
};

// JSON config file; see README for the schema. Unknown keys are rejected.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// Throws ValidationError: missing seed, zero counts, folds < 2, ...
void validate(const ExperimentConfig& cfg);

// Canonical JSON of the settings that influence results (not the output
// directory or thread count).
std::string canonical_config(const ExperimentConfig& cfg);
// 16 hex digits of FNV-1a over canonical_config.
std::string config_digest(const ExperimentConfig& cfg);

struct ExperimentResult {
  EvalReport report;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  LabelHistogram histogram;
  std::vector<std::filesystem::path> artifacts;
};

// load or synthesize -> label_graph -> sample_pairs -> cross_validate.
// Writes graph.jsonl (synthetic runs), labeled_edges.jsonl, pairs.jsonl,
// report.txt and report.jsonl into output_dir. On failure every file this
// call created is removed and the error names the stage.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* progress = nullptr);

struct InductionPaths {
  std::filesystem::path ratings;
  std::optional<std::filesystem::path> naming;
  std::optional<std::filesystem::path> lexicon_out;
  std::filesystem::path tree_out;
  std::filesystem::path matrix_out;
};

struct InductionResult {
  LoadedRatings ratings;
  CorrelationMatrix matrix;
  ClusterTree tree;
  std::optional<Lexicon> lexicon;
  std::vector<std::string> warnings;
};

// load_ratings -> spearman_matrix -> blockmodel -> assign_polarity, writing
// the cluster tree and the leaf-ordered matrix; with a naming file, also
// export_lexicon and save it (refusing an empty lexicon).
InductionResult induce_lexicon(const InductionPaths& paths, const BlockmodelOptions& options = {});

}  // namespace reldim
