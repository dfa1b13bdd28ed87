#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "netemd/denoise.hpp"
#include "netemd/gdm.hpp"

namespace netemd {

// One network's per-node orbit frequencies in comparable form: raw counts
// (integral) or a denoised reconstruction, plus the orbit ids the columns
// refer to. Every measure checks that both sides share key and orbit ids.
struct NetworkData {
  std::string label;
  AtlasKey key;
  std::vector<int> orbit_ids;
  Eigen::MatrixXd values;
  bool integral = false;

  static NetworkData from_counts(std::string label,
                                 const GraphletDegreeMatrix& gdm);
  static NetworkData from_reconstruction(std::string label,
                                         const ReconstructedGDM& recon);
};

// Column-slice to a subset of the orbit ids (netemd over a sub-atlas).
NetworkData slice_orbits(const NetworkData& net,
                         const std::vector<int>& orbit_ids);

// Per-orbit variance-scaled histograms, computed once per network so the
// scaling stays out of the pairwise loops. Small compared to the matrix.
class NetEmdProfile {
 public:
  explicit NetEmdProfile(const NetworkData& net);

  const std::string& label() const { return label_; }
  const AtlasKey& key() const { return key_; }
  const std::vector<int>& orbit_ids() const { return orbit_ids_; }
  const std::vector<EmpiricalDistribution>& histograms() const {
    return histograms_;
  }
  // column-sum != 0, the weighted-variant occupancy test
  const std::vector<char>& occupied() const { return occupied_; }

 private:
  std::string label_;
  AtlasKey key_;
  std::vector<int> orbit_ids_;
  std::vector<EmpiricalDistribution> histograms_;
  std::vector<char> occupied_;
};

double netemd(const NetEmdProfile& a, const NetEmdProfile& b);
double weighted_netemd(const NetEmdProfile& a, const NetEmdProfile& b);

double netemd(const NetworkData& a, const NetworkData& b);
double weighted_netemd(const NetworkData& a, const NetworkData& b);
double netemd(const GraphletDegreeMatrix& a, const GraphletDegreeMatrix& b);
double weighted_netemd(const GraphletDegreeMatrix& a,
                       const GraphletDegreeMatrix& b);

// Graphlet-degree-distribution agreement in [0, 1]; orbits of graphlets
// absent from both networks are excluded from the mean.
double gda(const GraphletDegreeMatrix& a, const GraphletDegreeMatrix& b);

struct GraphletCorrelationMatrix {
  std::vector<int> orbit_ids;
  Eigen::MatrixXd values;  // Spearman, average ranks; constant column -> 0
};

GraphletCorrelationMatrix correlation_matrix(const GraphletDegreeMatrix& gdm,
                                             const std::vector<int>* subset);

// Euclidean distance between the strict upper triangles of the two GCMs.
double gcd(const GraphletDegreeMatrix& a, const GraphletDegreeMatrix& b,
           const std::vector<int>* orbit_subset = nullptr);

struct DistanceMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;
  std::vector<std::string> provenance;  // comment lines for the TSV
};

enum class Measure { netemd, weighted_netemd, gda, gcd };

Measure measure_from_name(const std::string& name);
std::string measure_name(Measure m);

struct PairwiseOptions {
  Measure measure = Measure::netemd;
  int workers = 1;
  // gcd only; nullptr = all orbits
  const std::vector<int>* orbit_subset = nullptr;
  // free each network's matrix once its histogram profile exists
  bool release_values = false;
};

// Symmetric matrix over unordered pairs; gda entries are reported as the
// dissimilarity 1 - agreement. Per-pair failures carry the pair's labels.
DistanceMatrix pairwise_matrix(std::vector<NetworkData>& corpus,
                               const PairwiseOptions& options);

DistanceMatrix pairwise_netemd_profiles(const std::vector<NetEmdProfile>& profiles,
                                        bool weighted, int workers);

void write_distance_tsv(std::ostream& out, const DistanceMatrix& dm);
DistanceMatrix read_distance_tsv(std::istream& in);

// Whitespace-separated orbit ids, '#' comments; validated against the
// atlas orbit count, deduplicated, ascending.
std::vector<int> load_orbit_subset(std::istream& in, int orbit_count);

}  // namespace netemd
