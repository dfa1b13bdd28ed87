#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "netemd/gdm.hpp"

namespace netemd {

// Per-column z-score using the population standard deviation. Zero-variance
// columns are masked: all-zero in values, excluded from decompositions,
// restored as their constant on de-standardization.
struct StandardizedGDM {
  Eigen::MatrixXd values;
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;  // 0 for masked columns
  std::vector<int> active;  // non-masked column indices, ascending
};

StandardizedGDM standardize(const Eigen::MatrixXd& values);

struct DenoiseProvenance {
  std::string method;            // "pca" or "ica"
  int components = 0;            // L or c actually used
  double variance_ratio = -1.0;  // requested r, or -1 for a fixed L
  bool converged = true;
  int iterations = 0;
  std::string summary() const;
};

// De-standardized reconstruction plus enough context to compare and slice it.
struct ReconstructedGDM {
  Eigen::MatrixXd values;
  AtlasKey key;
  std::vector<int> orbit_ids;      // current columns (comparison set)
  std::vector<int> fit_orbit_ids;  // columns the model was fitted on
  DenoiseProvenance provenance;
};

struct PcaSelector {
  static PcaSelector explained_variance(double r);
  static PcaSelector fixed(int L);
  double r = -1.0;
  int L = -1;
};

struct PcaModel {
  StandardizedGDM standardized;
  Eigen::VectorXd eigenvalues;  // descending, one per active column
  Eigen::MatrixXd components;   // active x active, eigenvector columns
  int rank = 0;
};

PcaModel pca_fit(const Eigen::MatrixXd& values);

ReconstructedGDM pca_reconstruct(const GraphletDegreeMatrix& gdm,
                                 const PcaSelector& selector);

struct IcaModel {
  StandardizedGDM standardized;
  Eigen::MatrixXd projection;  // active x c: standardized data -> sources
  Eigen::MatrixXd sources;     // n x c
  Eigen::MatrixXd unmixing;    // c x c converged weight matrix
  bool converged = false;
  int iterations = 0;
};

IcaModel ica_fit(const Eigen::MatrixXd& values, int c, std::uint64_t seed,
                 int max_iter = 1000, double tol = 1e-6);

ReconstructedGDM ica_reconstruct(const GraphletDegreeMatrix& gdm, int c,
                                 std::uint64_t seed, int max_iter = 1000,
                                 double tol = 1e-6);

// Column-slices the reconstruction to target_orbit_ids (a subset of its
// comparison set); the fitted set is kept in provenance.
ReconstructedGDM truncate_reconstruction(const ReconstructedGDM& recon,
                                         const std::vector<int>& target_orbit_ids);

}  // namespace netemd
