#pragma once

#include <CLI11.hpp>

namespace reldim::cli {

// Each register_* adds one subcommand whose callback does the work.
void register_induce_lexicon(CLI::App& app);
void register_label_edges(CLI::App& app);
void register_sample_pairs(CLI::App& app);
void register_evaluate(CLI::App& app);
void register_run_experiment(CLI::App& app);
void register_synth_graph(CLI::App& app);
void register_split_consistency(CLI::App& app);
void register_serve(CLI::App& app);

}  // namespace reldim::cli
