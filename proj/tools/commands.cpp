#include "commands.hpp"

#include <signal.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include "reldim/annotate/server.hpp"
#include "reldim/annotate/store.hpp"
#include "reldim/error.hpp"
#include "reldim/experiment.hpp"
#include "reldim/graph_io.hpp"
#include "reldim/consistency.hpp"
#include "reldim/sampling.hpp"

namespace reldim::cli {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw Error("write failed for " + path);
}

Lexicon lexicon_or_demo(const std::string& path) { return path.empty() ? demo_lexicon() : load_lexicon(path); }

MatchCounting parse_counting(const std::string& s) {
  if (s == "occurrences") return MatchCounting::occurrences;
  if (s == "types") return MatchCounting::types;
  throw ValidationError("--count must be 'occurrences' or 'types'");
}

DimensionSource parse_source(const std::string& s) {
  if (s == "first") return DimensionSource::first_edge;
  if (s == "second") return DimensionSource::second_edge;
  throw ValidationError("--dimension-source must be 'first' or 'second'");
}


}  // namespace

void register_induce_lexicon(CLI::App& app) {
  struct Opts {
    std::string ratings, naming, out;
    std::uint64_t seed = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("induce-lexicon", "Cluster word ratings into dimensions and export a lexicon");
  cmd->add_option("--ratings", o->ratings, "Ratings CSV (word,rater,rating[,gender,age,race])")->required();
  cmd->add_option("--naming", o->naming, "Leaf naming CSV (leaf,dimension); omit to only write the tree");
  cmd->add_option("--out", o->out, "Output directory")->required();
  cmd->add_option("--seed", o->seed, "Seed for the eigenvector solver")->required();
  cmd->callback([o] {
    std::filesystem::create_directories(o->out);
    const std::filesystem::path dir = o->out;
    InductionPaths paths;
    paths.ratings = o->ratings;
    if (!o->naming.empty()) {
      paths.naming = o->naming;
      paths.lexicon_out = dir / "lexicon.csv";
    }
    paths.tree_out = dir / "tree.txt";
    paths.matrix_out = dir / "matrix.csv";
    BlockmodelOptions bo;
    bo.eigen.seed = o->seed;
    InductionResult r = induce_lexicon(paths, bo);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "words: " << r.matrix.size() << ", raters: " << r.ratings.matrix.rater_count()
              << ", leaves: " << r.tree.leaf_ids().size() << '\n';
    std::cout << "tree: " << paths.tree_out.string() << '\n' << "matrix: " << paths.matrix_out.string() << '\n';
    if (r.lexicon) std::cout << "lexicon: " << paths.lexicon_out->string() << " (" << r.lexicon->size() << " dimensions)\n";
  });
}

void register_label_edges(CLI::App& app) {
  struct Opts {
    std::string graph, lexicon, out, count = "occurrences";
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("label-edges", "Assign a relationship dimension to every edge");
  cmd->add_option("--graph", o->graph, "Edge messages JSONL (src,dst,text)")->required();
  cmd->add_option("--lexicon", o->lexicon, "Lexicon CSV; the demo lexicon if omitted");
  cmd->add_option("--out", o->out, "Labeled edges JSONL")->required();
  cmd->add_option("--count", o->count, "Match counting: occurrences or types");
  cmd->callback([o] {
    const MatchCounting counting = parse_counting(o->count);
    const Lexicon lex = lexicon_or_demo(o->lexicon);
    const LoadedGraph g = load_graph(o->graph);
    const LabeledGraph lg = label_graph(g.graph, lex, counting);
    auto out = open_out(o->out);
    write_labeled_edges(out, g.graph, lg.labels);
    finish(out, o->out);
    std::cout << graph_summary(g) << '\n' << format_histogram(lg.histogram);
  });
}

void register_sample_pairs(CLI::App& app) {
  struct Opts {
    std::string graph, lexicon, out, count = "occurrences", source = "first";
    std::size_t positives = 100000, negatives = 100000;
    std::uint64_t seed = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("sample-pairs", "Sample positive edges and 2-hop negatives with features");
  cmd->add_option("--graph", o->graph, "Edge messages JSONL")->required();
  cmd->add_option("--lexicon", o->lexicon, "Lexicon CSV; the demo lexicon if omitted");
  cmd->add_option("--positives", o->positives, "Positive pairs");
  cmd->add_option("--negatives", o->negatives, "Negative pairs");
  cmd->add_option("--count", o->count, "Match counting: occurrences or types");
  cmd->add_option("--dimension-source", o->source, "Edge whose label types a common neighbor: first or second");
  cmd->add_option("--seed", o->seed, "Sampling seed")->required();
  cmd->add_option("--out", o->out, "Pairs JSONL")->required();
  cmd->callback([o] {
    if (o->positives == 0 || o->negatives == 0) throw ValidationError("pair counts must be positive");
    const MatchCounting counting = parse_counting(o->count);
    const DimensionSource source = parse_source(o->source);
    const Lexicon lex = lexicon_or_demo(o->lexicon);
    const LoadedGraph g = load_graph(o->graph);
    const LabeledGraph lg = label_graph(g.graph, lex, counting);
    auto pairs = sample_pairs(g.graph, o->positives, o->negatives, o->seed);
    attach_features(g.graph, lg.labels, pairs, source);
    auto out = open_out(o->out);
    write_pairs(out, g.graph, pairs);
    finish(out, o->out);
    std::cout << "pairs: " << o->positives << " positive, " << o->negatives << " negative -> " << o->out << '\n';
  });
}

void register_evaluate(CLI::App& app) {
  struct Opts {
    std::string pairs, out;
    std::uint64_t seed = 0;
    std::size_t folds = 10, trees = 100, max_features = 0, max_depth = 0, min_leaf = 1;
    unsigned threads = 0;
    bool normalize = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("evaluate", "Cross-validate random forests on sampled pairs");
  cmd->add_option("--pairs", o->pairs, "Pairs JSONL from sample-pairs")->required();
  cmd->add_option("--seed", o->seed, "Fold and forest seed")->required();
  cmd->add_option("--folds", o->folds, "Number of folds");
  cmd->add_option("--trees", o->trees, "Trees per forest");
  cmd->add_option("--max-features", o->max_features, "Features tried per split; 0 = ceil(sqrt(F))");
  cmd->add_option("--max-depth", o->max_depth, "Tree depth limit; 0 = unlimited");
  cmd->add_option("--min-leaf", o->min_leaf, "Minimum samples per leaf");
  cmd->add_option("--threads", o->threads, "Worker threads; 0 = hardware concurrency");
  cmd->add_flag("--normalize", o->normalize, "Divide dimension counts by |out(u)|");
  cmd->add_option("--out", o->out, "Output directory for report.txt and report.jsonl")->required();
  cmd->callback([o] {
    if (o->folds < 2) throw ValidationError("--folds must be at least 2");
    if (o->trees == 0) throw ValidationError("--trees must be positive");
    if (o->min_leaf == 0) throw ValidationError("--min-leaf must be positive");
    std::ifstream in(o->pairs);
    if (!in) throw NotFoundError("cannot open " + o->pairs);
    const LoadedPairs loaded = read_pairs(in);
    EvalConfig ec;
    ec.folds = o->folds;
    ec.seed = o->seed;
    ec.forest.n_trees = o->trees;
    ec.forest.max_features = o->max_features;
    ec.forest.max_depth = o->max_depth;
    ec.forest.min_samples_leaf = o->min_leaf;
    ec.forest.threads = o->threads;
    ec.features.normalize_dimensions = o->normalize;
    EvalReport report = cross_validate(loaded.pairs, ec);
    report.metadata = {{"pairs", o->pairs}, {"seed", std::to_string(o->seed)}};
    std::filesystem::create_directories(o->out);
    const std::filesystem::path dir = o->out;
    auto txt = open_out((dir / "report.txt").string());
    write_report_text(txt, report);
    finish(txt, (dir / "report.txt").string());
    auto jl = open_out((dir / "report.jsonl").string());
    write_report_jsonl(jl, report);
    finish(jl, (dir / "report.jsonl").string());
    write_report_text(std::cout, report);
  });
}

void register_run_experiment(CLI::App& app) {
  struct Opts {
    std::string config, out;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("run-experiment", "Synthesize or load a graph, label, sample and evaluate");
  cmd->add_option("--config", o->config, "Experiment config JSON")->required();
  cmd->add_option("--seed", o->seed, "Overrides the config seed");
  cmd->add_option("--out", o->out, "Overrides the config output directory");
  cmd->add_flag("--quiet", o->quiet, "No progress on stderr");
  cmd->callback([o] {
    ExperimentConfig cfg = load_experiment_config(o->config);
    if (o->seed) cfg.seed = *o->seed;
    if (!o->out.empty()) cfg.output_dir = o->out;
    const ExperimentResult r = run_experiment(cfg, o->quiet ? nullptr : &std::cerr);
    write_report_text(std::cout, r.report);
  });
}

void register_synth_graph(CLI::App& app) {
  struct Opts {
    std::string config, lexicon, out, truth;
    std::optional<std::size_t> nodes;
    std::optional<double> density;
    std::optional<std::uint64_t> seed;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("synth-graph", "Generate a communication graph with planted dimensions");
  cmd->add_option("--config", o->config, "Experiment config JSON; its synth section and seed are used");
  cmd->add_option("--lexicon", o->lexicon, "Lexicon CSV; the demo lexicon if omitted");
  cmd->add_option("--nodes", o->nodes, "Overrides the node count");
  cmd->add_option("--density", o->density, "Overrides the seed-graph density");
  cmd->add_option("--seed", o->seed, "Generator seed (required unless the config has one)");
  cmd->add_option("--out", o->out, "Edge messages JSONL")->required();
  cmd->add_option("--truth", o->truth, "Optional JSONL of planted dimensions per edge");
  cmd->callback([o] {
    SynthParams params = demo_synth_params();
    std::optional<std::uint64_t> seed;
    std::string lexicon_path = o->lexicon;
    if (!o->config.empty()) {
      const ExperimentConfig cfg = load_experiment_config(o->config);
      params = cfg.synth;
      seed = cfg.seed;
      if (lexicon_path.empty() && cfg.lexicon_path) lexicon_path = cfg.lexicon_path->string();
    }
    if (o->seed) seed = o->seed;
    if (!seed) throw ValidationError("a seed is required (--seed or config)");
    if (o->nodes) params.n_nodes = *o->nodes;
    if (o->density) params.base_density = *o->density;
    const Lexicon lex = lexicon_or_demo(lexicon_path);
    const SynthResult s = synth_graph(params, lex, *seed);
    auto out = open_out(o->out);
    write_edge_messages(out, s.graph);
    finish(out, o->out);
    if (!o->truth.empty()) {
      auto t = open_out(o->truth);
      for (EdgeId e = 0; e < s.graph.edge_count(); ++e) {
        const Edge& edge = s.graph.edge(e);
        const auto& p = s.truth.planted[e];
        t << "{\"src\":\"" << s.graph.id(edge.src) << "\",\"dst\":\"" << s.graph.id(edge.dst)
          << "\",\"planted\":\"" << (p ? std::string(to_string(*p)) : std::string("untyped"))
          << "\",\"closure\":" << (s.truth.closure_edge[e] ? "true" : "false") << "}\n";
      }
      finish(t, o->truth);
    }
    std::cout << "nodes: " << s.graph.node_count() << ", edges: " << s.graph.edge_count()
              << " (seed " << s.truth.seed_edges << ", closure " << s.graph.edge_count() - s.truth.seed_edges
              << ")\n";
  });
}

void register_split_consistency(CLI::App& app) {
  struct Opts {
    std::string ratings, attribute, level;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("split-consistency", "Correlate the rating matrices of two rater groups");
  cmd->add_option("--ratings", o->ratings, "Ratings CSV with demographic columns")->required();
  cmd->add_option("--attribute", o->attribute, "gender, age or race")->required();
  cmd->add_option("--level", o->level, "Value defining the first group (gender, race)");
  cmd->callback([o] {
    RaterSplit split;
    if (o->attribute == "gender") {
      split.attribute = SplitAttribute::gender;
    } else if (o->attribute == "age") {
      split.attribute = SplitAttribute::age;
    } else if (o->attribute == "race") {
      split.attribute = SplitAttribute::race;
    } else {
      throw ValidationError("--attribute must be gender, age or race");
    }
    if (split.attribute != SplitAttribute::age && o->level.empty()) {
      throw ValidationError("--level is required for " + o->attribute);
    }
    split.level = o->level;
    const LoadedRatings r = load_ratings(o->ratings);
    const RaterGroups g = make_groups(r.matrix, split);
    const double c = split_consistency(r.matrix, g.first, g.second);
    std::printf("attribute=%s first=%zu second=%zu correlation=%.6f\n", o->attribute.c_str(), g.first.size(),
                g.second.size(), c);
  });
}

void register_serve(CLI::App& app) {
  struct Opts {
    std::string log, host = "127.0.0.1";
    int port = 8080;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("serve", "Run the annotation HTTP service");
  cmd->add_option("--log", o->log, "Append-only label log (JSONL)")->required();
  cmd->add_option("--host", o->host, "Bind address");
  cmd->add_option("--port", o->port, "Port; 0 picks a free one");
  cmd->callback([o] {
    if (o->port < 0 || o->port > 65535) throw ValidationError("--port out of range");
    // Signals are taken synchronously by this thread; the server runs on another.
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);

    annotate::AnnotationStore store(o->log);
    if (store.truncated_bytes() > 0) {
      std::cerr << "warning: dropped " << store.truncated_bytes() << " bytes of a torn final log line\n";
    }
    annotate::Server server(store);
    const int port = server.bind(o->host, o->port);
    std::cout << "listening on http://" << o->host << ':' << port << std::endl;
    std::thread worker([&server] { server.listen(); });
    int sig = 0;
    sigwait(&set, &sig);
    server.stop();
    worker.join();
  });
}

}  // namespace reldim::cli
