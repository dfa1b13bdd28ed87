#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace netemd {

using CountMatrix =
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Identifies the atlas a matrix was counted against; distance measures
// refuse to mix networks counted under different keys.
struct AtlasKey {
  bool directed = false;
  int max_size = 0;
  int orbit_count = 0;
  friend bool operator==(const AtlasKey&, const AtlasKey&) = default;
};

// Per-node orbit frequencies F_G: row = node, column = orbit.
class GraphletDegreeMatrix {
 public:
  GraphletDegreeMatrix(CountMatrix counts, AtlasKey key);

  Eigen::Index node_count() const { return counts_.rows(); }
  Eigen::Index orbit_count() const { return counts_.cols(); }
  const CountMatrix& counts() const { return counts_; }
  const AtlasKey& key() const { return key_; }

 private:
  CountMatrix counts_;
  AtlasKey key_;
};

// Weighted distribution on finitely many real points. Support strictly
// increasing, weights positive and summing to 1.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution(std::vector<double> support,
                        std::vector<double> weights);
  // Histogram of raw values (each value weight 1/n, equal values merged).
  static EmpiricalDistribution from_values(const std::vector<double>& values);

  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }
  double min() const { return support_.front(); }
  double max() const { return support_.back(); }
  double mean() const { return mean_; }
  double variance() const { return variance_; }
  bool degenerate() const { return support_.size() == 1; }

  friend bool operator==(const EmpiricalDistribution& a,
                         const EmpiricalDistribution& b) {
    return a.support_ == b.support_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<double> support_;
  std::vector<double> weights_;
  double mean_ = 0.0, variance_ = 0.0;
};

EmpiricalDistribution orbit_histogram(const GraphletDegreeMatrix& gdm,
                                      int orbit_id);

// TSV: optional '#' comment lines (the first records directedness/max_size/
// orbit count), then "node\torbit_0..." header, then one row per node.
void write_gdm_tsv(std::ostream& out, const GraphletDegreeMatrix& gdm,
                   const std::vector<std::string>& extra_comments = {});
GraphletDegreeMatrix read_gdm_tsv(std::istream& in);

// Same layout with real-valued entries (denoised reconstructions).
void write_real_gdm_tsv(std::ostream& out, const Eigen::MatrixXd& values,
                        const AtlasKey& key,
                        const std::vector<std::string>& extra_comments);

}  // namespace netemd
