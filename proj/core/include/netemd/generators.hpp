#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netemd/graph.hpp"

namespace netemd {

enum class Model {
  er,
  ba,
  geometric3d,
  gene_duplication,
  dd_vazquez,
  dd_ispolatov,
  configuration,
  watts_strogatz,
};

Model model_from_name(const std::string& name);
std::string model_name(Model m);
const std::vector<Model>& all_models();

struct ModelSpec {
  Model model = Model::er;
  NodeId node_count = 0;
  double target_avg_degree = 0.0;
  std::uint64_t seed = 0;
};

struct GenerationReport {
  double measured_degree = 0.0;
  // configuration model: edges dropped when swap repair could not place them
  int dropped_edges = 0;
};

// Undirected simple graph from the model; deterministic in the seed.
// Parameterized models (geometric3d, gene_duplication, dd_vazquez,
// dd_ispolatov) calibrate their tunable first; see calibrate().
Graph generate(const ModelSpec& spec, GenerationReport* report = nullptr);

// Tunable parameter reaching the target mean degree: monotone bisection,
// each probe averaging 3 trial generations on seeds derived from (model, N,
// k) alone, accepted within +-5%. Memoized per (model, N, k).
double calibrate(Model model, NodeId node_count, double target_avg_degree);

// Digraphs sharing one removal order: every undirected edge is doubled,
// then level rho keeps enough reciprocal pairs for the measured reciprocity
// to land on rho; larger rho removes a prefix-subset, so edge sets nest.
struct ReciprocitySchedule {
  std::vector<double> levels;
  std::vector<Graph> digraphs;
};

ReciprocitySchedule inject_reciprocity(const Graph& g,
                                       const std::vector<double>& levels,
                                       std::uint64_t seed);

}  // namespace netemd
