#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "reldim/error.hpp"
#include "reldim/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"reldim: relationship dimensions from ratings and message graphs"};
  app.set_version_flag("--version", std::string(reldim::kVersion));
  app.require_subcommand(1);

  reldim::cli::register_induce_lexicon(app);
  reldim::cli::register_label_edges(app);
  reldim::cli::register_sample_pairs(app);
  reldim::cli::register_evaluate(app);
  reldim::cli::register_run_experiment(app);
  reldim::cli::register_synth_graph(app);
  reldim::cli::register_split_consistency(app);
  reldim::cli::register_serve(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const reldim::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
