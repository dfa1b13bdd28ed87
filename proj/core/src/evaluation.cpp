#include "netemd/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "netemd/errors.hpp"

namespace netemd {

namespace {

// categories -> dense ids in first-appearance order
std::vector<int> category_ids(const std::vector<std::string>& categories,
                              int* count) {
  std::map<std::string, int> ids;
  std::vector<int> out;
  out.reserve(categories.size());
  for (const std::string& c : categories) {
    auto [it, inserted] =
        ids.emplace(c, static_cast<int>(ids.size()));
    (void)inserted;
    out.push_back(it->second);
  }
  *count = static_cast<int>(ids.size());
  return out;
}

void check_shape(const LabeledDataset& data) {
  const auto n = static_cast<std::size_t>(data.distances.rows());
  if (data.distances.cols() != data.distances.rows())
    throw DomainError("distance matrix must be square");
  if (data.categories.size() != n)
    throw DomainError("one category label per network");
  if (!data.distances.allFinite())
    throw DomainError("distances must be finite");
  int count = 0;
  category_ids(data.categories, &count);
  if (count < 2) throw DomainError("at least two distinct categories");
}

void check_no_singletons(const LabeledDataset& data) {
  std::map<std::string, int> sizes;
  for (const std::string& c : data.categories) ++sizes[c];
  for (const auto& [name, size] : sizes)
    if (size < 2)
      throw DomainError("category '" + name + "' has a single member");
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

double p_bar(const LabeledDataset& data) {
  check_shape(data);
  check_no_singletons(data);
  const int n = static_cast<int>(data.distances.rows());
  int count = 0;
  const std::vector<int> cat = category_ids(data.categories, &count);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double hits = 0.0;
    long long comparisons = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i || cat[j] != cat[i]) continue;
      for (int k = 0; k < n; ++k) {
        if (cat[k] == cat[i]) continue;
        const double same = data.distances(i, j);
        const double diff = data.distances(i, k);
        if (same < diff)
          hits += 1.0;
        else if (same == diff)
          hits += 0.5;
        ++comparisons;
      }
    }
    total += hits / static_cast<double>(comparisons);
  }
  return total / n;
}

MeanSE task1_report(const std::vector<double>& group_values) {
  if (group_values.size() < 2)
    throw DomainError("standard error needs at least two group values");
  const double n = static_cast<double>(group_values.size());
  double mean = 0.0;
  for (double v : group_values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : group_values) ss += (v - mean) * (v - mean);
  MeanSE out;
  out.mean = mean;
  out.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return out;
}

double aupr(const LabeledDataset& data) {
  check_shape(data);
  const int n = static_cast<int>(data.distances.rows());
  int count = 0;
  const std::vector<int> cat = category_ids(data.categories, &count);

  std::vector<std::pair<double, bool>> pairs;  // (distance, same category)
  long long positives = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool same = cat[i] == cat[j];
      positives += same;
      pairs.emplace_back(data.distances(i, j), same);
    }
  if (positives == 0)
    throw DomainError("no same-category pair to rank");
  if (positives == static_cast<long long>(pairs.size()))
    throw DomainError("no different-category pair to rank");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& [d, same] : pairs) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (hi == lo)
    throw DomainError("all pairwise distances are identical");
  for (auto& [d, same] : pairs) d = (d - lo) / (hi - lo);

  std::vector<std::pair<double, double>> curve;  // (recall, precision)
  for (int step = 0; step <= 200; ++step) {
    const double eps = step * 0.005;
    long long tp = 0, fp = 0;
    for (const auto& [d, same] : pairs) {
      const bool predicted = step == 200 ? true : d < eps;
      if (!predicted) continue;
      if (same)
        ++tp;
      else
        ++fp;
    }
    const double precision =
        tp + fp == 0 ? 1.0
                     : static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall =
        static_cast<double>(tp) / static_cast<double>(positives);
    curve.emplace_back(recall, precision);
  }
  std::stable_sort(curve.begin(), curve.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i)
    area += (curve[i].first - curve[i - 1].first) *
            0.5 * (curve[i].second + curve[i - 1].second);
  return area;
}

std::vector<int> complete_linkage(const Eigen::MatrixXd& distances,
                                  int cluster_count) {
  const int n = static_cast<int>(distances.rows());
  if (distances.cols() != n) throw DomainError("distance matrix must be square");
  if (cluster_count < 1 || cluster_count > n)
    throw DomainError("cluster count must lie in [1, item count]");

  Eigen::MatrixXd d = distances;
  std::vector<int> active;
  std::vector<std::vector<int>> members(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    active.push_back(i);
    members[i] = {i};
  }
  while (static_cast<int>(active.size()) > cluster_count) {
    int best_a = -1, best_b = -1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < active.size(); ++x)
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        const double v = d(active[x], active[y]);
        if (v < best) {
          best = v;
          best_a = static_cast<int>(x);
          best_b = static_cast<int>(y);
        }
      }
    const int keep = active[best_a];
    const int gone = active[best_b];
    for (int other : active) {
      if (other == keep || other == gone) continue;
      const double merged = std::max(d(keep, other), d(gone, other));
      d(keep, other) = merged;
      d(other, keep) = merged;
    }
    members[keep].insert(members[keep].end(), members[gone].begin(),
                         members[gone].end());
    active.erase(active.begin() + best_b);
  }

  std::vector<int> slot_of(static_cast<std::size_t>(n), -1);
  for (int slot : active)
    for (int item : members[slot]) slot_of[item] = slot;
  std::vector<int> assignment(static_cast<std::size_t>(n), -1);
  std::map<int, int> relabel;
  for (int i = 0; i < n; ++i) {
    auto [it, inserted] =
        relabel.emplace(slot_of[i], static_cast<int>(relabel.size()));
    (void)inserted;
    assignment[i] = it->second;
  }
  return assignment;
}

double adjusted_rand_index(const std::vector<int>& a,
                           const std::vector<int>& b) {
  if (a.size() != b.size())
    throw DomainError("assignments must cover the same items");
  if (a.empty()) throw DomainError("assignments must be non-empty");
  std::map<std::pair<int, int>, long long> cells;
  std::map<int, long long> row_sum, col_sum;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++cells[{a[i], b[i]}];
    ++row_sum[a[i]];
    ++col_sum[b[i]];
  }
  double index = 0.0;
  for (const auto& [cell, size] : cells) index += choose2(size);
  double rows = 0.0, cols = 0.0;
  for (const auto& [id, size] : row_sum) rows += choose2(size);
  for (const auto& [id, size] : col_sum) cols += choose2(size);
  const double total = choose2(static_cast<double>(a.size()));
  if (total == 0.0) return 1.0;
  const double expected = rows * cols / total;
  const double maximum = 0.5 * (rows + cols);
  if (maximum == expected) return 1.0;
  return (index - expected) / (maximum - expected);
}

double ari(const LabeledDataset& data) {
  check_shape(data);
  int count = 0;
  const std::vector<int> cat = category_ids(data.categories, &count);
  const std::vector<int> clusters = complete_linkage(data.distances, count);
  return adjusted_rand_index(cat, clusters);
}

}  // namespace netemd
