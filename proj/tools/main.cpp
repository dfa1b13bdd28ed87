#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netemd/errors.hpp"
#include "netemd/pipeline.hpp"

namespace {

// --config is applied before flag binding so explicit flags override it
netemd::RunConfig preload_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    std::string path;
    if (arg == "--config" && i + 1 < argc)
      path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0)
      path = arg.substr(9);
    if (path.empty()) continue;
    std::ifstream in(path);
    if (!in) throw netemd::DomainError("cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return netemd::config_from_json(text.str());
  }
  return {};
}

void add_common(CLI::App* cmd, netemd::RunConfig& config) {
  // consumed by preload_config; accepted here so parsing sees a known flag
  cmd->add_option(
      "--config", [](const std::vector<std::string>&) { return true; },
      "JSON config file; flags override it");
  cmd->add_option("--seed", config.seed, "master seed");
  cmd->add_option("--workers", config.workers, "thread count, 0 = all cores");
}

void add_grid(CLI::App* cmd, netemd::RunConfig& config) {
  cmd->add_option("--models", config.models,
                  "model names, default all eight")
      ->delimiter(',');
  cmd->add_option("--nodes", config.node_counts, "node counts")
      ->delimiter(',');
  cmd->add_option("--degrees", config.degrees, "target average degrees")
      ->delimiter(',');
  cmd->add_option("--rho", config.rho_levels,
                  "reciprocity levels; any level makes the corpus directed")
      ->delimiter(',');
  cmd->add_option("--replicates", config.replicates, "replicates per cell");
  cmd->add_option("--out-dir", config.out_dir, "output directory");
}

void add_compare(CLI::App* cmd, netemd::RunConfig& config) {
  cmd->add_option("--measure", config.measure,
                  "netemd, weighted, gda, or gcd");
  cmd->add_option("--denoise", config.denoise, "none, pca:<r>, or ica:<c>");
  cmd->add_option("--orbit-subset", config.orbit_subset_file,
                  "file of orbit ids to keep");
  cmd->add_option("--truncate-to", config.truncate_to,
                  "drop orbits of graphlets larger than this");
}

void add_evaluate(CLI::App* cmd, netemd::RunConfig& config) {
  cmd->add_option("--metric", config.metric, "pbar, aupr, or ari");
  cmd->add_option("--group-by", config.group_by, "subset of N,k,rho")
      ->delimiter(',');
  cmd->add_option("--labels", config.labels_file,
                  "label<TAB>category file, alternative to a manifest");
}

}  // namespace

int main(int argc, char** argv) {
  netemd::RunConfig config;
  try {
    config = preload_config(argc, argv);
  } catch (const netemd::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  CLI::App app{"graphlet-orbit network comparison"};
  app.require_subcommand(1);

  CLI::App* generate =
      app.add_subcommand("generate", "grow a calibrated synthetic corpus");
  add_common(generate, config);
  add_grid(generate, config);

  CLI::App* count =
      app.add_subcommand("count", "count graphlet orbits into GDM files");
  add_common(count, config);
  count->add_option("inputs", config.inputs, "edge-list files");
  count->add_option("--manifest", config.manifest, "corpus manifest");
  count->add_flag("--directed", config.directed,
                  "treat explicit inputs as digraphs");
  count->add_option("--size", config.size, "largest graphlet size, 3 to 5");
  count->add_flag("--force", config.force, "recount existing outputs");

  CLI::App* compare =
      app.add_subcommand("compare", "pairwise distances between networks");
  add_common(compare, config);
  compare->add_option("inputs", config.inputs, "GDM files");
  compare->add_option("--manifest", config.manifest, "corpus manifest");
  compare->add_option("--size", config.size,
                      "graphlet size of the counted GDMs");
  add_compare(compare, config);
  compare->add_option("--output", config.output, "distance matrix TSV");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "score a distance matrix against labels");
  add_common(evaluate, config);
  evaluate->add_option("input", config.inputs, "distance matrix TSV");
  evaluate->add_option("--manifest", config.manifest, "corpus manifest");
  add_evaluate(evaluate, config);
  evaluate->add_option("--output", config.output,
                       "metrics JSON, default stdout");

  CLI::App* experiment = app.add_subcommand(
      "experiment", "generate, count, compare, and evaluate in one run");
  add_common(experiment, config);
  add_grid(experiment, config);
  experiment->add_option("--size", config.size, "largest graphlet size");
  add_compare(experiment, config);
  add_evaluate(experiment, config);
  experiment->add_option("--output", config.output,
                         "metrics JSON, default <out-dir>/metrics.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (generate->parsed()) netemd::cmd_generate(config);
    if (count->parsed()) netemd::cmd_count(config);
    if (compare->parsed()) netemd::cmd_compare(config);
    if (evaluate->parsed()) netemd::cmd_evaluate(config);
    if (experiment->parsed()) netemd::cmd_experiment(config);
  } catch (const netemd::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const netemd::CapabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
