#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace netemd {

// Parameters for every command; each command reads the fields it needs and
// echoes the whole config into its output's provenance.
struct RunConfig {
  std::uint64_t seed = 1;
  int workers = 0;  // 0 = all hardware threads

  // generate
  std::vector<std::string> models;  // empty = all eight
  std::vector<int> node_counts;
  std::vector<double> degrees;
  std::vector<double> rho_levels;  // non-empty = directed corpus
  int replicates = 1;
  std::string out_dir;

  // count / compare / evaluate inputs
  std::string manifest;
  std::vector<std::string> inputs;
  bool directed = false;
  int size = 4;
  bool force = false;

  // compare
  std::string measure = "netemd";
  std::string denoise = "none";
  std::string orbit_subset_file;
  int truncate_to = 0;  // 0 = off
  std::string output;

  // evaluate
  std::string metric = "pbar";
  std::vector<std::string> group_by;  // subset of {"N","k","rho"}
  std::string labels_file;
};

// Canonical one-line JSON echo; identical configs give identical bytes.
std::string config_json(const RunConfig& config);
// Strict parse: unknown keys are errors.
RunConfig config_from_json(const std::string& text);

int effective_workers(int workers);

struct ManifestRow {
  std::string path;  // relative to the manifest's directory
  std::string model;
  int node_count = 0;
  double degree = 0.0;
  double rho = -1.0;  // < 0 = undirected
  std::uint64_t seed = 0;
  double measured_degree = 0.0;
  double measured_reciprocity = -1.0;  // < 0 = undirected
};

std::vector<ManifestRow> read_manifest(const std::string& path);

// foo.edges -> foo.size{S}.gdm.tsv (other extensions are kept intact)
std::string gdm_path_for(const std::string& input, int size);
// basename with the pipeline suffixes (.tsv/.gdm/.size{S}/.edges) stripped
std::string network_label(const std::string& path);

void cmd_generate(const RunConfig& config);
void cmd_count(const RunConfig& config);
void cmd_compare(const RunConfig& config);
void cmd_evaluate(const RunConfig& config);
// generate -> count -> compare -> evaluate, bit-identical to running the
// four commands with the same config.
void cmd_experiment(const RunConfig& config);

}  // namespace netemd
