#include "netemd/gdm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "netemd/errors.hpp"

namespace netemd {

GraphletDegreeMatrix::GraphletDegreeMatrix(CountMatrix counts, AtlasKey key)
    : counts_(std::move(counts)), key_(key) {
  if (counts_.cols() != key_.orbit_count)
    throw DomainError("GDM column count does not match atlas orbit count");
  if ((counts_.array() < 0).any())
    throw DomainError("GDM entries must be non-negative");
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> support,
                                             std::vector<double> weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  if (support_.empty()) throw DomainError("empty distribution");
  if (support_.size() != weights_.size())
    throw DomainError("support/weight length mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (!std::isfinite(support_[i])) throw DomainError("non-finite support");
    if (i > 0 && support_[i] <= support_[i - 1])
      throw DomainError("support must be strictly increasing");
    if (weights_[i] <= 0.0) throw DomainError("weights must be positive");
    total += weights_[i];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw DomainError("weights must sum to 1");
  double m = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i)
    m += weights_[i] * support_[i];
  mean_ = m;
  double v = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    const double d = support_[i] - m;
    v += weights_[i] * d * d;
  }
  variance_ = v;
}

EmpiricalDistribution EmpiricalDistribution::from_values(
    const std::vector<double>& values) {
  if (values.empty()) throw DomainError("empty distribution");
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> support, weights;
  const double w = 1.0 / static_cast<double>(sorted.size());
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    support.push_back(sorted[i]);
    weights.push_back(w * static_cast<double>(j - i));
    i = j;
  }
  // Renormalize the final weight so rounding never trips the sum check.
  double total = 0.0;
  for (double x : weights) total += x;
  weights.back() += 1.0 - total;
  return EmpiricalDistribution(std::move(support), std::move(weights));
}

EmpiricalDistribution orbit_histogram(const GraphletDegreeMatrix& gdm,
                                      int orbit_id) {
  if (orbit_id < 0 || orbit_id >= gdm.orbit_count())
    throw DomainError("orbit id out of range");
  std::vector<double> values(gdm.node_count());
  for (Eigen::Index i = 0; i < gdm.node_count(); ++i)
    values[i] = static_cast<double>(gdm.counts()(i, orbit_id));
  return EmpiricalDistribution::from_values(values);
}

namespace {

void write_tsv_header(std::ostream& out, const AtlasKey& key,
                      Eigen::Index orbit_count,
                      const std::vector<std::string>& extra_comments) {
  out << "# directed=" << (key.directed ? 1 : 0)
      << " max_size=" << key.max_size << " orbits=" << key.orbit_count
      << '\n';
  for (const auto& c : extra_comments) out << "# " << c << '\n';
  out << "node";
  for (Eigen::Index j = 0; j < orbit_count; ++j) out << "\torbit_" << j;
  out << '\n';
}

}  // namespace

void write_gdm_tsv(std::ostream& out, const GraphletDegreeMatrix& gdm,
                   const std::vector<std::string>& extra_comments) {
  write_tsv_header(out, gdm.key(), gdm.orbit_count(), extra_comments);
  for (Eigen::Index i = 0; i < gdm.node_count(); ++i) {
    out << i;
    for (Eigen::Index j = 0; j < gdm.orbit_count(); ++j)
      out << '\t' << gdm.counts()(i, j);
    out << '\n';
  }
}

void write_real_gdm_tsv(std::ostream& out, const Eigen::MatrixXd& values,
                        const AtlasKey& key,
                        const std::vector<std::string>& extra_comments) {
  write_tsv_header(out, key, values.cols(), extra_comments);
  char buf[40];
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    out << i;
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", values(i, j));
      out << '\t' << buf;
    }
    out << '\n';
  }
}

GraphletDegreeMatrix read_gdm_tsv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  AtlasKey key;
  bool key_found = false;

  // comment lines, then the header
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      int d = 0, ms = 0, m = 0;
      if (std::sscanf(line.c_str(), "# directed=%d max_size=%d orbits=%d", &d,
                      &ms, &m) == 3) {
        key.directed = d != 0;
        key.max_size = ms;
        key.orbit_count = m;
        key_found = true;
      }
      continue;
    }
    break;  // header row reached
  }
  if (!key_found)
    throw ParseError("GDM file missing '# directed=... max_size=... orbits=...' comment");
  if (line.rfind("node", 0) != 0)
    throw ParseError("GDM file line " + std::to_string(line_no) +
                     ": expected header starting with 'node'");

  std::vector<std::int64_t> data;
  Eigen::Index rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::int64_t node;
    if (!(ls >> node) || node != rows)
      throw ParseError("GDM file line " + std::to_string(line_no) +
                       ": expected consecutive node ids");
    std::int64_t v;
    Eigen::Index cols = 0;
    while (ls >> v) {
      data.push_back(v);
      ++cols;
    }
    if (cols != key.orbit_count)
      throw ParseError("GDM file line " + std::to_string(line_no) + ": expected " +
                       std::to_string(key.orbit_count) + " orbit columns");
    ++rows;
  }
  CountMatrix counts(rows, key.orbit_count);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < key.orbit_count; ++j)
      counts(i, j) = data[i * key.orbit_count + j];
  return GraphletDegreeMatrix(std::move(counts), key);
}

}  // namespace netemd
