#include "netemd/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "netemd/atlas.hpp"
#include "netemd/distances.hpp"
#include "netemd/errors.hpp"
#include "netemd/evaluation.hpp"
#include "netemd/generators.hpp"
#include "netemd/graph.hpp"
#include "netemd/orbit_count.hpp"
#include "netemd/rng.hpp"

namespace netemd {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::uint64_t double_bits(double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  return bits;
}

// workers and force steer execution, not results, so they stay out of the
// echo; outputs are byte-identical across worker counts and forced reruns
ordered_json config_to_json(const RunConfig& c) {
  ordered_json j;
  j["seed"] = c.seed;
  j["models"] = c.models;
  j["node_counts"] = c.node_counts;
  j["degrees"] = c.degrees;
  j["rho_levels"] = c.rho_levels;
  j["replicates"] = c.replicates;
  j["out_dir"] = c.out_dir;
  j["manifest"] = c.manifest;
  j["inputs"] = c.inputs;
  j["directed"] = c.directed;
  j["size"] = c.size;
  j["measure"] = c.measure;
  j["denoise"] = c.denoise;
  j["orbit_subset_file"] = c.orbit_subset_file;
  j["truncate_to"] = c.truncate_to;
  j["output"] = c.output;
  j["metric"] = c.metric;
  j["group_by"] = c.group_by;
  j["labels_file"] = c.labels_file;
  return j;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  return in;
}

bool strip_suffix(std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size() ||
      s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0)
    return false;
  s.resize(s.size() - suffix.size());
  return true;
}

struct CountTarget {
  std::string input;
  bool directed = false;
};

std::vector<CountTarget> count_targets(const RunConfig& config) {
  std::vector<CountTarget> targets;
  if (!config.manifest.empty()) {
    const fs::path base = fs::path(config.manifest).parent_path();
    for (const ManifestRow& row : read_manifest(config.manifest))
      targets.push_back({(base / row.path).string(), row.rho >= 0.0});
  }
  for (const std::string& input : config.inputs)
    targets.push_back({input, config.directed});
  if (targets.empty())
    throw UsageError("nothing to count: give a manifest or input files");
  return targets;
}

int supported_orbit_count(bool directed, int size) {
  static const std::map<std::pair<bool, int>, int> orbit_counts = {
      {{false, 3}, 4},  {{false, 4}, 15}, {{false, 5}, 73},
      {{true, 3}, 33},  {{true, 4}, 730}};
  const auto it = orbit_counts.find({directed, size});
  if (it == orbit_counts.end()) {
    // produces the canonical capability error for directed size 5
    GraphletAtlas::build(directed, size);
    throw CapabilityError("unsupported counting configuration");
  }
  return it->second;
}

const GraphletAtlas& atlas_for_size(bool directed, int size) {
  AtlasKey key;
  key.directed = directed;
  key.max_size = size;
  key.orbit_count = supported_orbit_count(directed, size);
  return atlas_for(key);
}

Measure parse_measure(const std::string& name) {
  try {
    return measure_from_name(name == "weighted" ? "weighted-netemd" : name);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

struct DenoiseSpec {
  enum class Kind { none, pca, ica } kind = Kind::none;
  double variance_ratio = 0.0;
  int components = 0;
};

DenoiseSpec parse_denoise(const std::string& text) {
  DenoiseSpec spec;
  if (text == "none") return spec;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail =
      colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (head == "pca") {
      spec.kind = DenoiseSpec::Kind::pca;
      std::size_t used = 0;
      spec.variance_ratio = std::stod(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(tail);
      if (spec.variance_ratio <= 0.0 || spec.variance_ratio > 1.0)
        throw UsageError("pca variance ratio must lie in (0, 1]");
      return spec;
    }
    if (head == "ica") {
      spec.kind = DenoiseSpec::Kind::ica;
      std::size_t used = 0;
      spec.components = std::stoi(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(tail);
      if (spec.components < 1)
        throw UsageError("ica needs at least one component");
      return spec;
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("cannot parse denoise spec '" + text + "'");
  }
  throw UsageError("unknown denoise mode '" + text +
                   "' (use none, pca:<r>, or ica:<c>)");
}

std::vector<std::string> compare_inputs(const RunConfig& config) {
  std::vector<std::string> inputs = config.inputs;
  if (!config.manifest.empty()) {
    const fs::path base = fs::path(config.manifest).parent_path();
    for (const ManifestRow& row : read_manifest(config.manifest)) {
      const std::string gdm =
          gdm_path_for((base / row.path).string(), config.size);
      if (!fs::exists(gdm))
        throw DomainError("missing GDM file '" + gdm +
                          "'; run the count command first");
      inputs.push_back(gdm);
    }
  }
  if (inputs.size() < 2)
    throw UsageError("comparison needs at least two networks");
  return inputs;
}

GraphletDegreeMatrix load_gdm(const std::string& path) {
  std::ifstream in = open_in(path);
  try {
    return read_gdm_tsv(in);
  } catch (const std::exception& e) {
    throw ParseError("in '" + path + "': " + e.what());
  }
}

struct EvaluateLabels {
  // network label -> category (+ grouping keys when from a manifest)
  std::map<std::string, ManifestRow> rows;
  bool has_keys = false;
};

EvaluateLabels evaluate_labels(const RunConfig& config) {
  EvaluateLabels out;
  if (!config.manifest.empty()) {
    for (const ManifestRow& row : read_manifest(config.manifest))
      out.rows[network_label(row.path)] = row;
    out.has_keys = true;
    return out;
  }
  if (config.labels_file.empty())
    throw UsageError("evaluation needs a manifest or a labels file");
  std::ifstream in = open_in(config.labels_file);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
      throw ParseError("labels line " + std::to_string(line_no) +
                       ": expected 'label<TAB>category'");
    ManifestRow row;
    row.model = line.substr(tab + 1);
    out.rows[line.substr(0, tab)] = row;
  }
  return out;
}

double metric_value(const std::string& metric, const LabeledDataset& data) {
  if (metric == "pbar") return p_bar(data);
  if (metric == "aupr") return aupr(data);
  if (metric == "ari") return ari(data);
  throw UsageError("unknown metric '" + metric +
                   "' (use pbar, aupr, or ari)");
}

}  // namespace

std::string config_json(const RunConfig& config) {
  return config_to_json(config).dump();
}

RunConfig config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  RunConfig c;
  const ordered_json defaults = config_to_json(c);
  for (const auto& [key, value] : j.items()) {
    if (!defaults.contains(key) && key != "workers" && key != "force")
      throw ParseError("config: unknown key '" + key + "'");
  }
  try {
    c.seed = j.value("seed", c.seed);
    c.workers = j.value("workers", c.workers);
    c.models = j.value("models", c.models);
    c.node_counts = j.value("node_counts", c.node_counts);
    c.degrees = j.value("degrees", c.degrees);
    c.rho_levels = j.value("rho_levels", c.rho_levels);
    c.replicates = j.value("replicates", c.replicates);
    c.out_dir = j.value("out_dir", c.out_dir);
    c.manifest = j.value("manifest", c.manifest);
    c.inputs = j.value("inputs", c.inputs);
    c.directed = j.value("directed", c.directed);
    c.size = j.value("size", c.size);
    c.force = j.value("force", c.force);
    c.measure = j.value("measure", c.measure);
    c.denoise = j.value("denoise", c.denoise);
    c.orbit_subset_file = j.value("orbit_subset_file", c.orbit_subset_file);
    c.truncate_to = j.value("truncate_to", c.truncate_to);
    c.output = j.value("output", c.output);
    c.metric = j.value("metric", c.metric);
    c.group_by = j.value("group_by", c.group_by);
    c.labels_file = j.value("labels_file", c.labels_file);
  } catch (const std::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return c;
}

int effective_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<ManifestRow> read_manifest(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<ManifestRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const std::exception& e) {
      throw ParseError("manifest line " + std::to_string(line_no) + ": " +
                       e.what());
    }
    if (j.contains("config")) continue;  // provenance echo row
    try {
      ManifestRow row;
      row.path = j.at("path").get<std::string>();
      row.model = j.at("model").get<std::string>();
      row.node_count = j.at("N").get<int>();
      row.degree = j.at("k").get<double>();
      row.rho = j.at("rho").is_null() ? -1.0 : j.at("rho").get<double>();
      row.seed = j.at("seed").get<std::uint64_t>();
      row.measured_degree = j.at("measured_degree").get<double>();
      row.measured_reciprocity = j.at("measured_reciprocity").is_null()
                                     ? -1.0
                                     : j.at("measured_reciprocity").get<double>();
      rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      throw ParseError("manifest line " + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  return rows;
}

std::string gdm_path_for(const std::string& input, int size) {
  std::string base = input;
  strip_suffix(base, ".edges");
  return base + ".size" + std::to_string(size) + ".gdm.tsv";
}

std::string network_label(const std::string& path) {
  std::string name = fs::path(path).filename().string();
  for (;;) {
    if (strip_suffix(name, ".tsv")) continue;
    if (strip_suffix(name, ".gdm")) continue;
    if (strip_suffix(name, ".edges")) continue;
    bool stripped = false;
    for (int s = 2; s <= 9 && !stripped; ++s)
      stripped = strip_suffix(name, ".size" + std::to_string(s));
    if (!stripped) break;
  }
  return name;
}

void cmd_generate(const RunConfig& config) {
  if (config.out_dir.empty()) throw UsageError("generate needs an out dir");
  if (config.node_counts.empty() || config.degrees.empty())
    throw UsageError("generate needs node counts and degrees");
  if (config.replicates < 1)
    throw UsageError("replicates must be at least 1");
  std::vector<Model> models;
  if (config.models.empty()) {
    models = all_models();
  } else {
    for (const std::string& name : config.models) {
      try {
        models.push_back(model_from_name(name));
      } catch (const ParseError& e) {
        throw UsageError(e.what());
      }
    }
  }
  std::vector<double> levels = config.rho_levels;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec)
    throw DomainError("cannot create directory '" + config.out_dir + "'");

  const std::string echo = config_json(config);
  std::ofstream manifest = open_out(
      (fs::path(config.out_dir) / "manifest.jsonl").string());
  {
    ordered_json head;
    head["config"] = config_to_json(config);
    manifest << head.dump() << "\n";
  }

  for (Model model : models) {
    for (int n : config.node_counts) {
      for (double k : config.degrees) {
        for (int rep = 0; rep < config.replicates; ++rep) {
          ModelSpec spec;
          spec.model = model;
          spec.node_count = n;
          spec.target_avg_degree = k;
          spec.seed = derive_seed(
              config.seed,
              {static_cast<std::uint64_t>(model) + 1,
               static_cast<std::uint64_t>(n), double_bits(k),
               static_cast<std::uint64_t>(rep)});
          GenerationReport report;
          const Graph base = generate(spec, &report);
          const std::string stem = model_name(model) + "_n" +
                                   std::to_string(n) + "_k" + fmt_g(k);

          auto write_graph = [&](const Graph& g, const std::string& name,
                                 double rho, double measured_reciprocity) {
            std::ofstream out =
                open_out((fs::path(config.out_dir) / name).string());
            out << "# config " << echo << "\n";
            write_edge_list(out, g);
            if (!out) throw DomainError("cannot write '" + name + "'");
            ordered_json row;
            row["path"] = name;
            row["model"] = model_name(model);
            row["N"] = n;
            row["k"] = k;
            if (rho < 0.0)
              row["rho"] = nullptr;
            else
              row["rho"] = rho;
            row["seed"] = spec.seed;
            row["measured_degree"] = g.average_degree();
            if (measured_reciprocity < 0.0)
              row["measured_reciprocity"] = nullptr;
            else
              row["measured_reciprocity"] = measured_reciprocity;
            manifest << row.dump() << "\n";
          };

          if (levels.empty()) {
            write_graph(base, stem + "_r" + std::to_string(rep) + ".edges",
                        -1.0, -1.0);
          } else {
            const ReciprocitySchedule schedule = inject_reciprocity(
                base, levels, derive_seed(spec.seed, {0xd17u}));
            for (std::size_t li = 0; li < levels.size(); ++li) {
              const Graph& digraph = schedule.digraphs[li];
              write_graph(digraph,
                          stem + "_rho" + fmt_g(levels[li]) + "_r" +
                              std::to_string(rep) + ".edges",
                          levels[li], reciprocity(digraph));
            }
          }
        }
      }
    }
  }
  if (!manifest) throw DomainError("cannot write the manifest");
}

void cmd_count(const RunConfig& config) {
  if (config.size < 3 || config.size > 5)
    throw UsageError("size must be 3, 4, or 5");
  const std::vector<CountTarget> targets = count_targets(config);

  std::set<std::string> outputs;
  for (const CountTarget& target : targets) {
    supported_orbit_count(target.directed, config.size);
    const std::string out_path = gdm_path_for(target.input, config.size);
    if (!outputs.insert(out_path).second)
      throw DomainError("two inputs map to the same output '" + out_path +
                        "'");
  }

  const std::string echo = config_json(config);
  const int workers = effective_workers(config.workers);
  for (const CountTarget& target : targets) {
    const std::string out_path = gdm_path_for(target.input, config.size);
    if (!config.force && fs::exists(out_path)) continue;
    const GraphletAtlas& atlas = atlas_for_size(target.directed, config.size);
    std::ifstream in = open_in(target.input);
    LoadResult loaded = load_edge_list(in, target.directed);
    const GraphletDegreeMatrix gdm =
        count_orbits(loaded.graph, atlas, workers);
    std::ofstream out = open_out(out_path);
    write_gdm_tsv(out, gdm,
                  {"config " + echo,
                   "source " + fs::path(target.input).filename().string()});
    if (!out) throw DomainError("cannot write '" + out_path + "'");
  }
}

void cmd_compare(const RunConfig& config) {
  if (config.output.empty())
    throw UsageError("compare needs an output path");
  const Measure measure = parse_measure(config.measure);
  const DenoiseSpec denoise = parse_denoise(config.denoise);
  const bool profile_measure =
      measure == Measure::netemd || measure == Measure::weighted_netemd;
  if (denoise.kind != DenoiseSpec::Kind::none && !profile_measure)
    throw UsageError("denoising composes with the netemd measures only");
  if (measure == Measure::gda &&
      (!config.orbit_subset_file.empty() || config.truncate_to != 0))
    throw UsageError("gda has no orbit-subset or truncation mode");
  if (!config.orbit_subset_file.empty() && config.truncate_to != 0)
    throw UsageError("give either an orbit subset or a truncation size");

  const std::vector<std::string> inputs = compare_inputs(config);
  const int workers = effective_workers(config.workers);

  // ids are resolved against the first network's key, then applied to all
  std::vector<int> subset_ids;
  bool have_subset = false;
  auto resolve_subset = [&](const AtlasKey& key) {
    if (have_subset) return;
    have_subset = true;
    if (!config.orbit_subset_file.empty()) {
      std::ifstream in = open_in(config.orbit_subset_file);
      subset_ids = load_orbit_subset(in, key.orbit_count);
    } else if (config.truncate_to != 0) {
      if (config.truncate_to < 2 || config.truncate_to > key.max_size)
        throw UsageError(
            "truncation size must lie between 2 and the counted size");
      subset_ids = atlas_for(key).orbits_up_to_size(config.truncate_to);
    }
  };

  DistanceMatrix dm;
  std::vector<std::string> extra_provenance;
  if (profile_measure) {
    std::vector<NetEmdProfile> profiles;
    profiles.reserve(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const GraphletDegreeMatrix gdm = load_gdm(inputs[i]);
      resolve_subset(gdm.key());
      const std::string label = network_label(inputs[i]);
      NetworkData net = [&] {
        switch (denoise.kind) {
          case DenoiseSpec::Kind::pca:
            return NetworkData::from_reconstruction(
                label,
                pca_reconstruct(gdm, PcaSelector::explained_variance(
                                         denoise.variance_ratio)));
          case DenoiseSpec::Kind::ica: {
            ReconstructedGDM recon = ica_reconstruct(
                gdm, denoise.components,
                derive_seed(config.seed, {0x1ca5eedu, i}));
            if (!recon.provenance.converged)
              extra_provenance.push_back(label + ": " +
                                         recon.provenance.summary());
            return NetworkData::from_reconstruction(label, recon);
          }
          case DenoiseSpec::Kind::none:
            break;
        }
        return NetworkData::from_counts(label, gdm);
      }();
      if (!subset_ids.empty()) net = slice_orbits(net, subset_ids);
      profiles.emplace_back(net);
    }
    dm = pairwise_netemd_profiles(
        profiles, measure == Measure::weighted_netemd, workers);
  } else {
    std::vector<NetworkData> corpus;
    corpus.reserve(inputs.size());
    for (const std::string& input : inputs) {
      const GraphletDegreeMatrix gdm = load_gdm(input);
      resolve_subset(gdm.key());
      corpus.push_back(
          NetworkData::from_counts(network_label(input), gdm));
    }
    PairwiseOptions options;
    options.measure = measure;
    options.workers = workers;
    options.release_values = true;
    if (measure == Measure::gcd && !subset_ids.empty())
      options.orbit_subset = &subset_ids;
    dm = pairwise_matrix(corpus, options);
  }

  std::vector<std::string> provenance;
  provenance.push_back("config " + config_json(config));
  provenance.push_back("measure " + measure_name(measure));
  if (denoise.kind != DenoiseSpec::Kind::none)
    provenance.push_back("denoise " + config.denoise);
  if (!subset_ids.empty())
    provenance.push_back("orbits restricted to " +
                         std::to_string(subset_ids.size()) + " ids");
  for (const std::string& line : extra_provenance) provenance.push_back(line);
  for (const std::string& line : dm.provenance) provenance.push_back(line);
  dm.provenance = std::move(provenance);

  std::ofstream out = open_out(config.output);
  write_distance_tsv(out, dm);
  if (!out) throw DomainError("cannot write '" + config.output + "'");
}

void cmd_evaluate(const RunConfig& config) {
  if (config.inputs.size() != 1)
    throw UsageError("evaluate needs exactly one distance matrix");
  for (const std::string& g : config.group_by)
    if (g != "N" && g != "k" && g != "rho")
      throw UsageError("group-by keys are N, k, rho");

  std::ifstream in = open_in(config.inputs[0]);
  DistanceMatrix dm;
  try {
    dm = read_distance_tsv(in);
  } catch (const std::exception& e) {
    throw ParseError("in '" + config.inputs[0] + "': " + e.what());
  }

  const EvaluateLabels labels = evaluate_labels(config);
  if (!config.group_by.empty() && !labels.has_keys)
    throw UsageError("group-by needs a manifest for N, k, rho");

  std::vector<const ManifestRow*> rows;
  for (const std::string& label : dm.labels) {
    const auto it = labels.rows.find(label);
    if (it == labels.rows.end())
      throw DomainError("no label for network '" + label + "'");
    rows.push_back(&it->second);
  }

  const bool by_n = std::count(config.group_by.begin(),
                               config.group_by.end(), "N") > 0;
  const bool by_k = std::count(config.group_by.begin(),
                               config.group_by.end(), "k") > 0;
  const bool by_rho = std::count(config.group_by.begin(),
                                 config.group_by.end(), "rho") > 0;
  std::map<std::tuple<int, double, double>, std::vector<int>> groups;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::tuple<int, double, double> key{
        by_n ? rows[i]->node_count : 0, by_k ? rows[i]->degree : 0.0,
        by_rho ? rows[i]->rho : 0.0};
    groups[key].push_back(static_cast<int>(i));
  }

  auto dataset_for = [&](const std::vector<int>& members) {
    LabeledDataset data;
    const int m = static_cast<int>(members.size());
    data.distances.resize(m, m);
    for (int a = 0; a < m; ++a) {
      data.categories.push_back(rows[members[a]]->model);
      for (int b = 0; b < m; ++b)
        data.distances(a, b) = dm.values(members[a], members[b]);
    }
    return data;
  };

  ordered_json out;
  out["config"] = config_to_json(config);
  out["metric"] = config.metric;
  if (config.group_by.empty()) {
    std::vector<int> everyone(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      everyone[i] = static_cast<int>(i);
    out["value"] = metric_value(config.metric, dataset_for(everyone));
  } else {
    ordered_json group_rows = ordered_json::array();
    std::vector<double> values;
    for (const auto& [key, members] : groups) {
      ordered_json row;
      if (by_n) row["N"] = std::get<0>(key);
      if (by_k) row["k"] = std::get<1>(key);
      if (by_rho) row["rho"] = std::get<2>(key);
      row["count"] = members.size();
      const double value = metric_value(config.metric, dataset_for(members));
      row["value"] = value;
      values.push_back(value);
      group_rows.push_back(std::move(row));
    }
    out["groups"] = std::move(group_rows);
    if (values.size() >= 2) {
      const MeanSE agg = task1_report(values);
      out["mean"] = agg.mean;
      out["se"] = agg.se;
    } else {
      out["mean"] = values.front();
      out["se"] = nullptr;
    }
  }

  const std::string text = out.dump(2) + "\n";
  if (config.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream file = open_out(config.output);
    file << text;
    if (!file) throw DomainError("cannot write '" + config.output + "'");
  }
}

void cmd_experiment(const RunConfig& config) {
  if (config.out_dir.empty()) throw UsageError("experiment needs an out dir");
  cmd_generate(config);

  RunConfig count = config;
  count.manifest = (fs::path(config.out_dir) / "manifest.jsonl").string();
  count.inputs.clear();
  cmd_count(count);

  RunConfig compare = count;
  compare.output = (fs::path(config.out_dir) / "distances.tsv").string();
  cmd_compare(compare);

  RunConfig evaluate = count;
  evaluate.inputs = {compare.output};
  evaluate.output = config.output.empty()
                        ? (fs::path(config.out_dir) / "metrics.json").string()
                        : config.output;
  cmd_evaluate(evaluate);
}

}  // namespace netemd
