#include "netemd/distances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "netemd/atlas.hpp"
#include "netemd/emd.hpp"
#include "netemd/errors.hpp"
#include "netemd/parallel.hpp"

namespace netemd {

namespace {

void check_comparable(const AtlasKey& ka, const std::vector<int>& oa,
                      const AtlasKey& kb, const std::vector<int>& ob) {
  if (!(ka == kb)) throw DomainError("networks were counted under different atlases");
  if (oa != ob) throw DomainError("networks cover different orbit sets");
}

std::vector<int> all_orbits(Eigen::Index m) {
  std::vector<int> ids(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  return ids;
}

// Average ranks (1-based) with ties averaged; the Spearman prerequisite.
Eigen::VectorXd average_ranks(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return x(a) < x(b); });
  Eigen::VectorXd ranks(n);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && x(order[static_cast<std::size_t>(j + 1)]) ==
                            x(order[static_cast<std::size_t>(i)]))
      ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (Eigen::Index k = i; k <= j; ++k)
      ranks(order[static_cast<std::size_t>(k)]) = rank;
    i = j + 1;
  }
  return ranks;
}

double pearson_or_zero(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd ca = a.array() - a.mean();
  const Eigen::VectorXd cb = b.array() - b.mean();
  const double na = ca.squaredNorm(), nb = cb.squaredNorm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return ca.dot(cb) / std::sqrt(na * nb);
}

// d^o(k)/k for k >= 1, normalized to sum 1; all-zero columns stay empty.
std::map<std::int64_t, double> scaled_degree_distribution(
    const CountMatrix& counts, Eigen::Index orbit) {
  std::map<std::int64_t, std::int64_t> freq;
  for (Eigen::Index v = 0; v < counts.rows(); ++v) {
    const std::int64_t k = counts(v, orbit);
    if (k >= 1) ++freq[k];
  }
  std::map<std::int64_t, double> scaled;
  double total = 0.0;
  for (const auto& [k, d] : freq) {
    const double s = static_cast<double>(d) / static_cast<double>(k);
    scaled[k] = s;
    total += s;
  }
  for (auto& [k, s] : scaled) s /= total;
  return scaled;
}

}  // namespace

NetworkData NetworkData::from_counts(std::string label,
                                     const GraphletDegreeMatrix& gdm) {
  NetworkData net;
  net.label = std::move(label);
  net.key = gdm.key();
  net.orbit_ids = all_orbits(gdm.orbit_count());
  net.values = gdm.counts().cast<double>();
  net.integral = true;
  return net;
}

NetworkData NetworkData::from_reconstruction(std::string label,
                                             const ReconstructedGDM& recon) {
  NetworkData net;
  net.label = std::move(label);
  net.key = recon.key;
  net.orbit_ids = recon.orbit_ids;
  net.values = recon.values;
  net.integral = false;
  return net;
}

NetworkData slice_orbits(const NetworkData& net,
                         const std::vector<int>& orbit_ids) {
  if (orbit_ids.empty()) throw DomainError("orbit subset is empty");
  NetworkData out;
  out.label = net.label;
  out.key = net.key;
  out.orbit_ids = orbit_ids;
  out.integral = net.integral;
  out.values.resize(net.values.rows(),
                    static_cast<Eigen::Index>(orbit_ids.size()));
  for (std::size_t i = 0; i < orbit_ids.size(); ++i) {
    const auto it =
        std::find(net.orbit_ids.begin(), net.orbit_ids.end(), orbit_ids[i]);
    if (it == net.orbit_ids.end()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "orbit %d is not present in the data",
                    orbit_ids[i]);
      throw DomainError(buf);
    }
    out.values.col(static_cast<Eigen::Index>(i)) =
        net.values.col(it - net.orbit_ids.begin());
  }
  return out;
}

NetEmdProfile::NetEmdProfile(const NetworkData& net)
    : label_(net.label), key_(net.key), orbit_ids_(net.orbit_ids) {
  const Eigen::Index m = net.values.cols();
  histograms_.reserve(static_cast<std::size_t>(m));
  occupied_.resize(static_cast<std::size_t>(m));
  std::vector<double> column(static_cast<std::size_t>(net.values.rows()));
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index v = 0; v < net.values.rows(); ++v)
      column[static_cast<std::size_t>(v)] = net.values(v, j);
    histograms_.push_back(
        scale_to_unit_variance(EmpiricalDistribution::from_values(column)));
    occupied_[static_cast<std::size_t>(j)] =
        net.values.col(j).sum() != 0.0 ? 1 : 0;
  }
}

double netemd(const NetEmdProfile& a, const NetEmdProfile& b) {
  check_comparable(a.key(), a.orbit_ids(), b.key(), b.orbit_ids());
  const std::size_t m = a.histograms().size();
  double sum = 0.0;
  for (std::size_t o = 0; o < m; ++o)
    sum += emd_star_prescaled(a.histograms()[o], b.histograms()[o]);
  return sum / static_cast<double>(m);
}

double weighted_netemd(const NetEmdProfile& a, const NetEmdProfile& b) {
  check_comparable(a.key(), a.orbit_ids(), b.key(), b.orbit_ids());
  const std::size_t m = a.histograms().size();
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t o = 0; o < m; ++o) {
    if (!a.occupied()[o] && !b.occupied()[o]) continue;
    sum += emd_star_prescaled(a.histograms()[o], b.histograms()[o]);
    ++used;
  }
  if (used == 0)
    throw DomainError("no orbit occurs in either network");
  return sum / static_cast<double>(used);
}

double netemd(const NetworkData& a, const NetworkData& b) {
  return netemd(NetEmdProfile(a), NetEmdProfile(b));
}

double weighted_netemd(const NetworkData& a, const NetworkData& b) {
  return weighted_netemd(NetEmdProfile(a), NetEmdProfile(b));
}

double netemd(const GraphletDegreeMatrix& a, const GraphletDegreeMatrix& b) {
  return netemd(NetworkData::from_counts("a", a),
                NetworkData::from_counts("b", b));
}

double weighted_netemd(const GraphletDegreeMatrix& a,
                       const GraphletDegreeMatrix& b) {
  return weighted_netemd(NetworkData::from_counts("a", a),
                         NetworkData::from_counts("b", b));
}

double gda(const GraphletDegreeMatrix& a, const GraphletDegreeMatrix& b) {
  if (!(a.key() == b.key()))
    throw DomainError("networks were counted under different atlases");
  const GraphletAtlas& atlas = atlas_for(a.key());
  double sum = 0.0;
  int used = 0;
  for (const auto& g : atlas.graphlets()) {
    // an occurrence populates every orbit, so one column decides presence
    const Eigen::Index probe = g.first_orbit;
    const bool present = a.counts().col(probe).sum() > 0 ||
                         b.counts().col(probe).sum() > 0;
    if (!present) continue;
    for (int o = g.first_orbit; o < g.first_orbit + g.orbit_count; ++o) {
      const auto na = scaled_degree_distribution(a.counts(), o);
      const auto nb = scaled_degree_distribution(b.counts(), o);
      double sq = 0.0;
      for (const auto& [k, va] : na) {
        const auto it = nb.find(k);
        const double vb = it == nb.end() ? 0.0 : it->second;
        sq += (va - vb) * (va - vb);
      }
      for (const auto& [k, vb] : nb)
        if (!na.count(k)) sq += vb * vb;
      sum += 1.0 - std::sqrt(sq);
      ++used;
    }
  }
  if (used == 0) throw DomainError("no graphlet occurs in either network");
  return sum / static_cast<double>(used);
}

GraphletCorrelationMatrix correlation_matrix(const GraphletDegreeMatrix& gdm,
                                             const std::vector<int>* subset) {
  std::vector<int> ids =
      subset ? *subset : all_orbits(gdm.orbit_count());
  if (ids.size() < 2)
    throw DomainError("correlation needs at least 2 orbits");
  for (int id : ids)
    if (id < 0 || id >= gdm.orbit_count())
      throw DomainError("orbit id out of range");

  const Eigen::Index m = static_cast<Eigen::Index>(ids.size());
  Eigen::MatrixXd ranks(gdm.node_count(), m);
  std::vector<char> constant(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    const Eigen::VectorXd col =
        gdm.counts().col(ids[static_cast<std::size_t>(j)]).cast<double>();
    constant[static_cast<std::size_t>(j)] =
        (col.array() == col(0)).all() ? 1 : 0;
    ranks.col(j) = average_ranks(col);
  }

  GraphletCorrelationMatrix gcm;
  gcm.orbit_ids = std::move(ids);
  gcm.values.setIdentity(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double rho =
          (constant[static_cast<std::size_t>(i)] ||
           constant[static_cast<std::size_t>(j)])
              ? 0.0
              : pearson_or_zero(ranks.col(i), ranks.col(j));
      gcm.values(i, j) = gcm.values(j, i) = rho;
    }
  return gcm;
}

double gcd(const GraphletDegreeMatrix& a, const GraphletDegreeMatrix& b,
           const std::vector<int>* orbit_subset) {
  if (!(a.key() == b.key()))
    throw DomainError("networks were counted under different atlases");
  const auto ga = correlation_matrix(a, orbit_subset);
  const auto gb = correlation_matrix(b, orbit_subset);
  double sq = 0.0;
  for (Eigen::Index i = 0; i < ga.values.rows(); ++i)
    for (Eigen::Index j = i + 1; j < ga.values.cols(); ++j) {
      const double d = ga.values(i, j) - gb.values(i, j);
      sq += d * d;
    }
  return std::sqrt(sq);
}

Measure measure_from_name(const std::string& name) {
  if (name == "netemd") return Measure::netemd;
  if (name == "weighted-netemd") return Measure::weighted_netemd;
  if (name == "gda") return Measure::gda;
  if (name == "gcd") return Measure::gcd;
  throw DomainError("unknown measure: " + name);
}

std::string measure_name(Measure m) {
  switch (m) {
    case Measure::netemd: return "netemd";
    case Measure::weighted_netemd: return "weighted-netemd";
    case Measure::gda: return "gda";
    case Measure::gcd: return "gcd";
  }
  return "?";
}

namespace {

GraphletDegreeMatrix to_gdm(const NetworkData& net) {
  if (!net.integral)
    throw DomainError(net.label +
                      ": this measure needs raw integer counts");
  CountMatrix counts = net.values.cast<std::int64_t>();
  return GraphletDegreeMatrix(std::move(counts), net.key);
}

}  // namespace

DistanceMatrix pairwise_netemd_profiles(
    const std::vector<NetEmdProfile>& profiles, bool weighted, int workers) {
  const std::size_t n = profiles.size();
  DistanceMatrix dm;
  dm.labels.reserve(n);
  for (const auto& p : profiles) dm.labels.push_back(p.label());
  dm.values.setZero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});

  parallel_for(pairs.size(), workers, [&](std::size_t t, int) {
    const auto [i, j] = pairs[t];
    try {
      const double d = weighted ? weighted_netemd(profiles[i], profiles[j])
                                : netemd(profiles[i], profiles[j]);
      dm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d;
      dm.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = d;
    } catch (const DomainError& e) {
      throw DomainError(profiles[i].label() + " vs " + profiles[j].label() +
                        ": " + e.what());
    }
  });
  return dm;
}

DistanceMatrix pairwise_matrix(std::vector<NetworkData>& corpus,
                               const PairwiseOptions& options) {
  for (std::size_t i = 1; i < corpus.size(); ++i)
    check_comparable(corpus[0].key, corpus[0].orbit_ids, corpus[i].key,
                     corpus[i].orbit_ids);

  DistanceMatrix dm;
  if (options.measure == Measure::netemd ||
      options.measure == Measure::weighted_netemd) {
    std::vector<NetEmdProfile> profiles;
    profiles.reserve(corpus.size());
    for (auto& net : corpus) {
      profiles.emplace_back(net);
      if (options.release_values) net.values.resize(0, 0);
    }
    dm = pairwise_netemd_profiles(
        profiles, options.measure == Measure::weighted_netemd,
        options.workers);
  } else {
    const std::size_t n = corpus.size();
    std::vector<GraphletDegreeMatrix> gdms;
    gdms.reserve(n);
    for (const auto& net : corpus) gdms.push_back(to_gdm(net));
    dm.labels.reserve(n);
    for (const auto& net : corpus) dm.labels.push_back(net.label);
    dm.values.setZero(static_cast<Eigen::Index>(n),
                      static_cast<Eigen::Index>(n));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
    parallel_for(pairs.size(), options.workers, [&](std::size_t t, int) {
      const auto [i, j] = pairs[t];
      try {
        const double d =
            options.measure == Measure::gda
                ? 1.0 - gda(gdms[i], gdms[j])
                : gcd(gdms[i], gdms[j], options.orbit_subset);
        dm.values(static_cast<Eigen::Index>(i),
                  static_cast<Eigen::Index>(j)) = d;
        dm.values(static_cast<Eigen::Index>(j),
                  static_cast<Eigen::Index>(i)) = d;
      } catch (const DomainError& e) {
        throw DomainError(corpus[i].label + " vs " + corpus[j].label + ": " +
                          e.what());
      }
    });
  }
  dm.provenance.push_back("measure=" + measure_name(options.measure));
  return dm;
}

void write_distance_tsv(std::ostream& out, const DistanceMatrix& dm) {
  for (const auto& line : dm.provenance) out << "# " << line << "\n";
  out << "label";
  for (const auto& l : dm.labels) out << '\t' << l;
  out << "\n";
  char buf[32];
  for (Eigen::Index i = 0; i < dm.values.rows(); ++i) {
    out << dm.labels[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < dm.values.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", dm.values(i, j));
      out << '\t' << buf;
    }
    out << "\n";
  }
}

DistanceMatrix read_distance_tsv(std::istream& in) {
  DistanceMatrix dm;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto start = line.find_first_not_of("# ");
      if (start != std::string::npos)
        dm.provenance.push_back(line.substr(start));
      continue;
    }
    std::istringstream ls(line);
    if (!have_header) {
      std::string tag;
      ls >> tag;
      if (tag != "label")
        throw ParseError("distance matrix line " + std::to_string(line_no) +
                         ": expected 'label' header");
      std::string l;
      while (ls >> l) dm.labels.push_back(l);
      if (dm.labels.empty())
        throw ParseError("distance matrix header has no labels");
      have_header = true;
      continue;
    }
    std::string l;
    ls >> l;
    const std::size_t r = rows.size();
    if (r >= dm.labels.size())
      throw ParseError("distance matrix has more rows than labels");
    if (l != dm.labels[r])
      throw ParseError("distance matrix line " + std::to_string(line_no) +
                       ": row label mismatch");
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (row.size() != dm.labels.size())
      throw ParseError("distance matrix line " + std::to_string(line_no) +
                       ": wrong column count");
    rows.push_back(std::move(row));
  }
  if (rows.size() != dm.labels.size())
    throw ParseError("distance matrix is missing rows");
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  dm.values.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      dm.values(i, j) = rows[static_cast<std::size_t>(i)]
                            [static_cast<std::size_t>(j)];
  for (Eigen::Index i = 0; i < n; ++i) {
    if (dm.values(i, i) != 0.0)
      throw ParseError("distance matrix diagonal must be zero");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!std::isfinite(dm.values(i, j)))
        throw ParseError("distance matrix has non-finite entries");
      if (std::abs(dm.values(i, j) - dm.values(j, i)) > 1e-9)
        throw ParseError("distance matrix is not symmetric");
    }
  }
  return dm;
}

std::vector<int> load_orbit_subset(std::istream& in, int orbit_count) {
  std::vector<int> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    int id;
    while (ls >> id) {
      if (id < 0 || id >= orbit_count)
        throw ParseError("orbit subset line " + std::to_string(line_no) +
                         ": id " + std::to_string(id) + " out of range");
      ids.push_back(id);
    }
    std::string trailing;
    ls.clear();
    if (ls >> trailing)
      throw ParseError("orbit subset line " + std::to_string(line_no) +
                       ": unexpected token '" + trailing + "'");
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) throw ParseError("orbit subset file is empty");
  return ids;
}

}  // namespace netemd
