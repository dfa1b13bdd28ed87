#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace netemd {

// Symmetric distance matrix with a ground-truth category per network.
struct LabeledDataset {
  Eigen::MatrixXd distances;
  std::vector<std::string> categories;
};

// Mean over networks of the probability that a uniformly drawn same-category
// network is closer than a uniformly drawn different-category one; distance
// ties count one half.
double p_bar(const LabeledDataset& data);

struct MeanSE {
  double mean = 0.0;
  double se = 0.0;
};

// Mean and standard error (sample sd / sqrt(count)) of per-group scores.
MeanSE task1_report(const std::vector<double>& group_values);

// Area under precision-recall over a 201-point threshold sweep of min-max
// normalized distances; same-category pairs are the positive class. The
// final sweep point classifies every pair positive.
double aupr(const LabeledDataset& data);

// Complete-linkage agglomerative clustering cut at cluster_count clusters.
// Ties merge the smallest cluster-index pair; assignment ids are numbered
// by first appearance in network order.
std::vector<int> complete_linkage(const Eigen::MatrixXd& distances,
                                  int cluster_count);

// Chance-corrected agreement of two assignments over the same items.
double adjusted_rand_index(const std::vector<int>& a,
                           const std::vector<int>& b);

// Complete-linkage cut at the number of distinct categories, scored against
// the category assignment.
double ari(const LabeledDataset& data);

}  // namespace netemd
