#include "reldim/experiment.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "reldim/error.hpp"
#include "reldim/graph_io.hpp"
#include "reldim/rng.hpp"
#include "reldim/sampling.hpp"
#include "reldim/version.hpp"

namespace reldim {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

std::array<double, kDimensionCount> parse_dimension_map(const json& obj, const std::string& where) {
  std::array<double, kDimensionCount> out{};
  if (!obj.is_object()) throw ConfigError(where + " must be an object of dimension -> number");
  for (const auto& [key, value] : obj.items()) {
    auto d = parse_dimension(key);
    if (!d) throw ConfigError("unknown dimension '" + key + "' in " + where);
    out[static_cast<std::size_t>(*d)] = value.get<double>();
  }
  return out;
}

json dimension_map_json(const std::array<double, kDimensionCount>& values) {
  json out = json::object();
  for (Dimension d : kAllDimensions) {
    const double v = values[static_cast<std::size_t>(d)];
    if (v != 0.0) out[std::string(to_string(d))] = v;
  }
  return out;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    reject_unknown(j,
                   {"seed", "graph", "synth", "lexicon", "pairs", "folds", "forest", "features",
                    "match_counting", "output"},
                   "config");
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("graph")) cfg.graph_path = j["graph"].get<std::string>();
    if (j.contains("lexicon")) cfg.lexicon_path = j["lexicon"].get<std::string>();
    if (j.contains("output")) cfg.output_dir = j["output"].get<std::string>();
    if (j.contains("folds")) cfg.folds = j["folds"].get<std::size_t>();
    if (j.contains("match_counting")) {
      const auto m = j["match_counting"].get<std::string>();
      if (m == "occurrences") {
        cfg.counting = MatchCounting::occurrences;
      } else if (m == "types") {
        cfg.counting = MatchCounting::types;
      } else {
        throw ConfigError("match_counting must be 'occurrences' or 'types'");
      }
    }
    if (j.contains("synth")) {
      const json& s = j["synth"];
      reject_unknown(s,
                     {"nodes", "base_density", "closure", "untyped_closure", "weights", "untyped_fraction",
                      "words_per_edge", "noise_words_per_edge", "max_edges"},
                     "synth");
      SynthParams& p = cfg.synth;
      if (s.contains("nodes")) p.n_nodes = s["nodes"].get<std::size_t>();
      if (s.contains("base_density")) p.base_density = s["base_density"].get<double>();
      if (s.contains("closure")) p.closure = parse_dimension_map(s["closure"], "synth.closure");
      if (s.contains("untyped_closure")) p.untyped_closure = s["untyped_closure"].get<double>();
      if (s.contains("weights")) p.dimension_weights = parse_dimension_map(s["weights"], "synth.weights");
      if (s.contains("untyped_fraction")) p.untyped_fraction = s["untyped_fraction"].get<double>();
      if (s.contains("words_per_edge")) p.words_per_edge = s["words_per_edge"].get<std::size_t>();
      if (s.contains("noise_words_per_edge")) p.noise_words_per_edge = s["noise_words_per_edge"].get<std::size_t>();
      if (s.contains("max_edges")) p.max_edges = s["max_edges"].get<std::size_t>();
    }
    if (j.contains("pairs")) {
      const json& p = j["pairs"];
      reject_unknown(p, {"positive", "negative"}, "pairs");
      if (p.contains("positive")) cfg.n_pos = p["positive"].get<std::size_t>();
      if (p.contains("negative")) cfg.n_neg = p["negative"].get<std::size_t>();
    }
    if (j.contains("forest")) {
      const json& f = j["forest"];
      reject_unknown(f, {"trees", "max_depth", "min_samples_leaf", "max_features", "threads"}, "forest");
      if (f.contains("trees")) cfg.forest.n_trees = f["trees"].get<std::size_t>();
      if (f.contains("max_depth")) cfg.forest.max_depth = f["max_depth"].get<std::size_t>();
      if (f.contains("min_samples_leaf")) cfg.forest.min_samples_leaf = f["min_samples_leaf"].get<std::size_t>();
      if (f.contains("max_features")) cfg.forest.max_features = f["max_features"].get<std::size_t>();
      if (f.contains("threads")) cfg.forest.threads = f["threads"].get<unsigned>();
    }
    if (j.contains("features")) {
      const json& f = j["features"];
      reject_unknown(f, {"dimension_source", "normalize"}, "features");
      if (f.contains("dimension_source")) {
        const auto s = f["dimension_source"].get<std::string>();
        if (s == "first_edge") {
          cfg.features.source = DimensionSource::first_edge;
        } else if (s == "second_edge") {
          cfg.features.source = DimensionSource::second_edge;
        } else {
          throw ConfigError("dimension_source must be 'first_edge' or 'second_edge'");
        }
      }
      if (f.contains("normalize")) cfg.features.normalize_dimensions = f["normalize"].get<bool>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str());
}

void validate(const ExperimentConfig& cfg) {
  if (!cfg.seed) throw ValidationError("a seed is required");
  if (cfg.folds < 2) throw ValidationError("folds must be at least 2 (got " + std::to_string(cfg.folds) + ")");
  if (cfg.n_pos == 0 || cfg.n_neg == 0) throw ValidationError("pair counts must be positive");
  if (cfg.n_pos < cfg.folds || cfg.n_neg < cfg.folds) {
    throw ValidationError("each class needs at least as many pairs as folds");
  }
  if (cfg.forest.n_trees == 0) throw ValidationError("forest needs at least one tree");
  if (cfg.forest.min_samples_leaf == 0) throw ValidationError("min_samples_leaf must be at least 1");
  if (cfg.output_dir.empty()) throw ValidationError("an output directory is required");
  if (!cfg.graph_path && cfg.synth.n_nodes < 3) throw ValidationError("synthetic graph needs at least 3 nodes");
}

std::string canonical_config(const ExperimentConfig& cfg) {
  json j = {
      {"seed", cfg.seed.value_or(0)},
      {"pairs", {{"positive", cfg.n_pos}, {"negative", cfg.n_neg}}},
      {"folds", cfg.folds},
      {"match_counting", cfg.counting == MatchCounting::occurrences ? "occurrences" : "types"},
      {"forest",
       {{"trees", cfg.forest.n_trees},
        {"max_depth", cfg.forest.max_depth},
        {"min_samples_leaf", cfg.forest.min_samples_leaf},
        {"max_features", cfg.forest.max_features}}},
      {"features",
       {{"dimension_source", cfg.features.source == DimensionSource::first_edge ? "first_edge" : "second_edge"},
        {"normalize", cfg.features.normalize_dimensions}}},
      {"lexicon", cfg.lexicon_path ? cfg.lexicon_path->string() : std::string("<demo>")},
  };
  if (cfg.graph_path) {
    j["graph"] = cfg.graph_path->string();
  } else {
    const SynthParams& p = cfg.synth;
    j["synth"] = {
        {"nodes", p.n_nodes},
        {"base_density", p.base_density},
        {"closure", dimension_map_json(p.closure)},
        {"untyped_closure", p.untyped_closure},
        {"weights", dimension_map_json(p.dimension_weights)},
        {"untyped_fraction", p.untyped_fraction},
        {"words_per_edge", p.words_per_edge},
        {"noise_words_per_edge", p.noise_words_per_edge},
        {"max_edges", p.max_edges},
    };
  }
  return j.dump();
}

std::string config_digest(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_config(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// Removes the files it tracked unless dismissed.
class ArtifactGuard {
 public:
  explicit ArtifactGuard(std::vector<std::filesystem::path>& files) : files_(files) {}
  ~ArtifactGuard() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& f : files_) std::filesystem::remove(f, ec);
  }
  void commit() { committed_ = true; }

 private:
  std::vector<std::filesystem::path>& files_;
  bool committed_ = false;
};

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("stage ") + name + ": " + e.what());
  } catch (const NotFoundError& e) {
    throw NotFoundError(std::string("stage ") + name + ": " + e.what());
  } catch (const std::exception& e) {
    throw Error(std::string("stage ") + name + ": " + e.what());
  }
}

std::ofstream open_artifact(const std::filesystem::path& path, std::vector<std::filesystem::path>& files) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  files.push_back(path);
  return out;
}

void close_artifact(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* progress) {
  validate(cfg);
  const std::uint64_t seed = *cfg.seed;
  auto log = [&](const std::string& msg) {
    if (progress) *progress << msg << '\n';
  };

  ExperimentResult result;
  ArtifactGuard guard(result.artifacts);
  const auto& dir = cfg.output_dir;
  stage("output", [&] {
    std::filesystem::create_directories(dir);
    return 0;
  });

  const Lexicon lexicon = stage("lexicon", [&] {
    return cfg.lexicon_path ? load_lexicon(*cfg.lexicon_path) : demo_lexicon();
  });

  const CommGraph graph = stage("graph", [&] {
    if (cfg.graph_path) {
      LoadedGraph loaded = load_graph(*cfg.graph_path);
      if (loaded.self_loops_skipped > 0) {
        log("graph: skipped " + std::to_string(loaded.self_loops_skipped) + " self-loop records");
      }
      return std::move(loaded.graph);
    }
    SynthResult s = synth_graph(cfg.synth, lexicon, derive_seed(seed, 0x67726170));
    const auto path = dir / "graph.jsonl";
    auto out = open_artifact(path, result.artifacts);
    write_edge_messages(out, s.graph);
    close_artifact(out, path);
    return std::move(s.graph);
  });
  result.nodes = graph.node_count();
  result.edges = graph.edge_count();
  log("graph: " + std::to_string(result.nodes) + " nodes, " + std::to_string(result.edges) + " edges");

  const LabeledGraph labeled = stage("label_graph", [&] {
    LabeledGraph lg = label_graph(graph, lexicon, cfg.counting);
    const auto path = dir / "labeled_edges.jsonl";
    auto out = open_artifact(path, result.artifacts);
    write_labeled_edges(out, graph, lg.labels);
    close_artifact(out, path);
    return lg;
  });
  result.histogram = labeled.histogram;
  log("labels: untyped=" + std::to_string(labeled.histogram.untyped));

  const std::vector<PairSample> pairs = stage("sample_pairs", [&] {
    auto p = sample_pairs(graph, cfg.n_pos, cfg.n_neg, derive_seed(seed, 0x70616972));
    attach_features(graph, labeled.labels, p, cfg.features.source);
    const auto path = dir / "pairs.jsonl";
    auto out = open_artifact(path, result.artifacts);
    write_pairs(out, graph, p);
    close_artifact(out, path);
    return p;
  });
  log("pairs: " + std::to_string(pairs.size()));

  result.report = stage("cross_validate", [&] {
    EvalConfig ec;
    ec.folds = cfg.folds;
    ec.forest = cfg.forest;
    ec.features = cfg.features;
    ec.seed = derive_seed(seed, 0x6576616c);
    EvalReport r = cross_validate(pairs, ec);
    r.metadata = {
        {"experiment_seed", std::to_string(seed)},
        {"config_digest", config_digest(cfg)},
        {"graph", cfg.graph_path ? cfg.graph_path->string() : std::string("synthetic")},
        {"nodes", std::to_string(result.nodes)},
        {"edges", std::to_string(result.edges)},
        {"untyped_edges", std::to_string(labeled.histogram.untyped)},
    };
    return r;
  });

  stage("report", [&] {
    const auto txt = dir / "report.txt";
    auto out = open_artifact(txt, result.artifacts);
    write_report_text(out, result.report);
    close_artifact(out, txt);
    const auto jl = dir / "report.jsonl";
    auto out2 = open_artifact(jl, result.artifacts);
    write_report_jsonl(out2, result.report);
    close_artifact(out2, jl);
    return 0;
  });
  guard.commit();
  return result;
}

InductionResult induce_lexicon(const InductionPaths& paths, const BlockmodelOptions& options) {
  InductionResult r;
  r.ratings = load_ratings(paths.ratings);
  r.warnings = r.ratings.warnings;
  r.matrix = spearman_matrix(r.ratings.matrix);
  for (std::size_t w : r.matrix.degenerate_words) {
    r.warnings.push_back("word '" + r.matrix.words()[w] + "' has zero rating variance; correlations set to 0");
  }
  r.tree = blockmodel(r.matrix, options);
  if (r.tree.root().is_leaf()) {
    r.warnings.push_back("root was not split; polarity left undecided");
  } else {
    r.tree = assign_polarity(std::move(r.tree), r.ratings.matrix);
    const auto& first = r.tree.nodes[*r.tree.root().first_child];
    if (first.polarity == Polarity::both) r.warnings.push_back("root children have equal mean ratings; polarity undecidable");
  }

  std::optional<LeafNaming> naming;
  if (paths.naming) {
    std::ifstream in(*paths.naming);
    if (!in) throw NotFoundError("cannot open naming file " + paths.naming->string());
    naming = read_naming(in);
  }
  std::optional<Lexicon> lexicon;
  if (naming) {
    lexicon = export_lexicon(r.tree, *naming);
    if (!paths.lexicon_out) throw ValidationError("a lexicon output path is required with a naming file");
    // Refuse before writing anything else.
    if (lexicon->empty()) throw ValidationError("naming produced an empty lexicon; refusing to save");
  }

  {
    std::ofstream out(paths.tree_out);
    if (!out) throw Error("cannot write " + paths.tree_out.string());
    write_tree(out, r.tree);
  }
  {
    std::ofstream out(paths.matrix_out);
    if (!out) throw Error("cannot write " + paths.matrix_out.string());
    write_ordered_matrix(out, r.tree, r.matrix);
  }
  if (lexicon) {
    save_lexicon(*paths.lexicon_out, *lexicon);
    r.lexicon = std::move(lexicon);
  }
  return r;
}

}  // namespace reldim
