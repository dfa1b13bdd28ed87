#include "netemd/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <mutex>
#include <set>
#include <tuple>
#include <unordered_set>

#include "netemd/errors.hpp"
#include "netemd/rng.hpp"

namespace netemd {

namespace {

constexpr double kRewireProb = 0.05;
constexpr double kDuplicateLinkProb = 0.05;
constexpr double kDegreeTolerance = 0.05;
constexpr int kMaxProbes = 40;
constexpr int kTrialsPerProbe = 3;
constexpr std::uint64_t kCalibrationMaster = 0x5eedca11bULL;

const std::array<const char*, 8> kModelNames = {
    "er",         "ba",          "geometric3d",   "gene_duplication",
    "dd_vazquez", "dd_ispolatov", "configuration", "watts_strogatz"};

void validate(const ModelSpec& spec) {
  if (spec.node_count < 10)
    throw DomainError("node count must be at least 10");
  if (spec.target_avg_degree < 2.0)
    throw DomainError("target average degree must be at least 2");
  if (spec.target_avg_degree >= static_cast<double>(spec.node_count))
    throw DomainError("target average degree must be below the node count");
}

// Mutable adjacency for the duplication models; ordered sets keep neighbour
// iteration deterministic.
struct AdjBuilder {
  std::vector<std::set<NodeId>> adj;

  explicit AdjBuilder(NodeId n) : adj(static_cast<std::size_t>(n)) {}

  void add(NodeId u, NodeId v) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  void remove(NodeId u, NodeId v) {
    adj[u].erase(v);
    adj[v].erase(u);
  }
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (NodeId u = 0; u < static_cast<NodeId>(adj.size()); ++u)
      for (NodeId v : adj[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }
};

Graph make_er(const ModelSpec& spec, Rng& rng) {
  const NodeId n = spec.node_count;
  const long long max_edges =
      static_cast<long long>(n) * (n - 1) / 2;
  const long long m =
      std::llround(spec.target_avg_degree * static_cast<double>(n) / 2.0);
  if (m > max_edges)
    throw DomainError("target degree needs more edges than a simple graph holds");
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  while (static_cast<long long>(edges.size()) < m) {
    NodeId u = static_cast<NodeId>(rng.uniform_int(n));
    NodeId v = static_cast<NodeId>(rng.uniform_int(n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    const std::uint64_t key =
        static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) + v;
    if (!seen.insert(key).second) continue;
    edges.emplace_back(u, v);
  }
  return Graph(false, n, std::move(edges));
}

Graph make_ba(const ModelSpec& spec, Rng& rng) {
  const NodeId n = spec.node_count;
  const int m = std::max(1, static_cast<int>(
                                std::lround(spec.target_avg_degree / 2.0)));
  std::vector<NodeId> endpoints;  // each node repeated once per incident edge
  std::vector<Edge> edges;
  std::vector<NodeId> targets;
  for (NodeId t = static_cast<NodeId>(m); t < n; ++t) {
    targets.clear();
    while (static_cast<int>(targets.size()) < m) {
      NodeId candidate;
      if (endpoints.empty())
        candidate = static_cast<NodeId>(rng.uniform_int(t));
      else
        candidate = endpoints[rng.uniform_int(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), candidate) !=
          targets.end())
        continue;
      targets.push_back(candidate);
    }
    for (NodeId u : targets) {
      edges.emplace_back(u, t);
      endpoints.push_back(u);
      endpoints.push_back(t);
    }
  }
  return Graph(false, n, std::move(edges));
}

std::vector<std::array<double, 3>> cube_points(NodeId n, Rng& rng) {
  std::vector<std::array<double, 3>> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) {
    p[0] = rng.uniform();
    p[1] = rng.uniform();
    p[2] = rng.uniform();
  }
  return pts;
}

double dist2(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

Graph make_geometric(const ModelSpec& spec, double radius, Rng& rng) {
  const NodeId n = spec.node_count;
  const auto pts = cube_points(n, rng);
  const double r2 = radius * radius;
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (dist2(pts[u], pts[v]) < r2) edges.emplace_back(u, v);
  return Graph(false, n, std::move(edges));
}

Graph make_gene_duplication(const ModelSpec& spec, double radius, Rng& rng) {
  const NodeId n = spec.node_count;
  std::vector<std::array<double, 3>> pts = cube_points(5, rng);
  const double r2 = radius * radius;
  std::vector<Edge> edges;
  for (NodeId u = 0; u < 5; ++u)
    for (NodeId v = u + 1; v < 5; ++v)
      if (dist2(pts[u], pts[v]) <= r2) edges.emplace_back(u, v);
  while (static_cast<NodeId>(pts.size()) < n) {
    const NodeId parent = static_cast<NodeId>(rng.uniform_int(pts.size()));
    std::array<double, 3> offset;
    do {
      offset[0] = rng.uniform(-2.0, 2.0);
      offset[1] = rng.uniform(-2.0, 2.0);
      offset[2] = rng.uniform(-2.0, 2.0);
    } while (offset[0] * offset[0] + offset[1] * offset[1] +
                 offset[2] * offset[2] >
             4.0);
    std::array<double, 3> p = pts[parent];
    p[0] += offset[0];
    p[1] += offset[1];
    p[2] += offset[2];
    const NodeId child = static_cast<NodeId>(pts.size());
    for (NodeId v = 0; v < child; ++v)
      if (dist2(p, pts[v]) <= r2) edges.emplace_back(v, child);
    pts.push_back(p);
  }
  return Graph(false, n, std::move(edges));
}

Graph make_vazquez(const ModelSpec& spec, double q, Rng& rng) {
  const NodeId n = spec.node_count;
  AdjBuilder b(n);
  b.add(0, 1);
  for (NodeId next = 2; next < n; ++next) {
    const NodeId v = static_cast<NodeId>(rng.uniform_int(next));
    const std::vector<NodeId> snapshot(b.adj[v].begin(), b.adj[v].end());
    for (NodeId u : snapshot) b.add(next, u);
    if (rng.uniform() < kDuplicateLinkProb) b.add(v, next);
    for (NodeId u : snapshot) {
      if (rng.uniform() >= q) continue;
      if (rng.uniform() < 0.5)
        b.remove(v, u);
      else
        b.remove(next, u);
    }
  }
  return Graph(false, n, b.edges());
}

Graph make_ispolatov(const ModelSpec& spec, double p, Rng& rng) {
  const NodeId n = spec.node_count;
  AdjBuilder b(n);
  b.add(0, 1);
  for (NodeId next = 2; next < n; ++next) {
    const NodeId v = static_cast<NodeId>(rng.uniform_int(next));
    const std::vector<NodeId> snapshot(b.adj[v].begin(), b.adj[v].end());
    for (NodeId u : snapshot)
      if (rng.uniform() < p) b.add(next, u);
  }
  return Graph(false, n, b.edges());
}

Graph make_watts_strogatz(const ModelSpec& spec, Rng& rng) {
  const NodeId n = spec.node_count;
  int knn = std::max(1, static_cast<int>(
                            std::lround(spec.target_avg_degree / 2.0)));
  knn = std::min(knn, static_cast<int>((n - 1) / 2));
  AdjBuilder b(n);
  for (NodeId u = 0; u < n; ++u)
    for (int d = 1; d <= knn; ++d) b.add(u, static_cast<NodeId>((u + d) % n));
  for (NodeId u = 0; u < n; ++u) {
    for (int d = 1; d <= knn; ++d) {
      if (rng.uniform() >= kRewireProb) continue;
      const NodeId old = static_cast<NodeId>((u + d) % n);
      NodeId w = u;
      bool found = false;
      for (int attempt = 0; attempt < 1000; ++attempt) {
        w = static_cast<NodeId>(rng.uniform_int(n));
        if (w != u && b.adj[u].count(w) == 0) {
          found = true;
          break;
        }
      }
      if (!found) continue;
      b.remove(u, old);
      b.add(u, w);
    }
  }
  return Graph(false, n, b.edges());
}

double param_for(Model model, const ModelSpec& spec) {
  switch (model) {
    case Model::geometric3d:
    case Model::gene_duplication:
    case Model::dd_vazquez:
    case Model::dd_ispolatov:
      return calibrate(model, spec.node_count, spec.target_avg_degree);
    default:
      return 0.0;
  }
}

Graph dispatch(const ModelSpec& spec, Model model, double param, Rng& rng) {
  switch (model) {
    case Model::er:
      return make_er(spec, rng);
    case Model::ba:
      return make_ba(spec, rng);
    case Model::geometric3d:
      return make_geometric(spec, param, rng);
    case Model::gene_duplication:
      return make_gene_duplication(spec, param, rng);
    case Model::dd_vazquez:
      return make_vazquez(spec, param, rng);
    case Model::dd_ispolatov:
      return make_ispolatov(spec, param, rng);
    case Model::watts_strogatz:
      return make_watts_strogatz(spec, rng);
    case Model::configuration:
      break;
  }
  throw DomainError("unhandled model");
}

std::uint64_t edge_key(NodeId u, NodeId v, NodeId n) {
  if (u > v) std::swap(u, v);
  return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) + v;
}

// Stub matching over the degree sequence of a duplication-model template,
// with swap repair for self-loops and duplicates; unplaceable pairs are
// dropped and counted.
Graph make_configuration(const ModelSpec& spec, Rng& rng, int* dropped) {
  ModelSpec tmpl = spec;
  tmpl.model = Model::dd_vazquez;
  tmpl.seed = derive_seed(spec.seed, {0x7e3a11u});
  Rng template_rng(tmpl.seed);
  const double q =
      calibrate(Model::dd_vazquez, spec.node_count, spec.target_avg_degree);
  const Graph templ = make_vazquez(tmpl, q, template_rng);

  const NodeId n = spec.node_count;
  std::vector<NodeId> stubs;
  for (NodeId u = 0; u < n; ++u)
    for (int i = 0; i < templ.degree(u); ++i) stubs.push_back(u);
  rng.shuffle(stubs);

  std::vector<Edge> good;
  std::vector<Edge> bad;
  std::unordered_set<std::uint64_t> present;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    const NodeId u = stubs[i], v = stubs[i + 1];
    if (u == v || !present.insert(edge_key(u, v, n)).second)
      bad.emplace_back(u, v);
    else
      good.emplace_back(u, v);
  }

  int lost = 0;
  for (const Edge& e : bad) {
    bool placed = false;
    for (int attempt = 0; attempt < 200 && !good.empty(); ++attempt) {
      const std::size_t idx = rng.uniform_int(good.size());
      Edge g = good[idx];
      if (rng.uniform() < 0.5) std::swap(g.first, g.second);
      const NodeId u = e.first, v = e.second, a = g.first, b2 = g.second;
      if (u == a || v == b2) continue;
      const std::uint64_t k1 = edge_key(u, a, n), k2 = edge_key(v, b2, n);
      if (k1 == k2 || present.count(k1) || present.count(k2)) continue;
      present.erase(edge_key(good[idx].first, good[idx].second, n));
      present.insert(k1);
      present.insert(k2);
      good[idx] = Edge(u, a);
      good.emplace_back(v, b2);
      placed = true;
      break;
    }
    if (!placed) ++lost;
  }
  if (dropped != nullptr) *dropped = lost;
  return Graph(false, n, std::move(good));
}

struct ProbeState {
  int probes = 0;
  double best_param = 0.0;
  double best_degree = -1.0;
};

}  // namespace

Model model_from_name(const std::string& name) {
  for (std::size_t i = 0; i < kModelNames.size(); ++i)
    if (name == kModelNames[i]) return static_cast<Model>(i);
  throw ParseError("unknown model '" + name + "'");
}

std::string model_name(Model m) {
  return kModelNames[static_cast<std::size_t>(m)];
}

const std::vector<Model>& all_models() {
  static const std::vector<Model> models = {
      Model::er,          Model::ba,          Model::geometric3d,
      Model::gene_duplication, Model::dd_vazquez, Model::dd_ispolatov,
      Model::configuration,    Model::watts_strogatz};
  return models;
}

Graph generate(const ModelSpec& spec, GenerationReport* report) {
  validate(spec);
  const double param = param_for(spec.model, spec);
  Rng rng(derive_seed(spec.seed,
                      {static_cast<std::uint64_t>(spec.model) + 1}));
  int dropped = 0;
  Graph g = spec.model == Model::configuration
                ? make_configuration(spec, rng, &dropped)
                : dispatch(spec, spec.model, param, rng);
  if (report != nullptr) {
    report->measured_degree = g.average_degree();
    report->dropped_edges = dropped;
  }
  return g;
}

double calibrate(Model model, NodeId node_count, double target_avg_degree) {
  bool increasing;
  double lo, hi;
  bool expandable = false;
  switch (model) {
    case Model::geometric3d:
      increasing = true;
      lo = 1e-6;
      hi = std::sqrt(3.0);
      break;
    case Model::gene_duplication:
      increasing = true;
      lo = 1e-6;
      hi = 6.0;
      expandable = true;
      break;
    case Model::dd_vazquez:
      increasing = false;  // stronger divergence removes more edges
      lo = 0.0;
      hi = 1.0;
      break;
    case Model::dd_ispolatov:
      increasing = true;
      lo = 0.0;
      hi = 1.0;
      break;
    default:
      throw DomainError("model '" + model_name(model) +
                        "' has no tunable parameter");
  }

  ModelSpec probe_spec;
  probe_spec.model = model;
  probe_spec.node_count = node_count;
  probe_spec.target_avg_degree = target_avg_degree;
  validate(probe_spec);

  static std::mutex memo_mutex;
  static std::map<std::tuple<int, NodeId, double>, double> memo;
  const auto key = std::make_tuple(static_cast<int>(model), node_count,
                                   target_avg_degree);
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }

  std::uint64_t k_bits;
  std::memcpy(&k_bits, &target_avg_degree, sizeof(k_bits));
  ProbeState state;
  auto fail = [&]() -> double {
    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "calibration for '%s' could not reach average degree %.3f; "
                  "closest achieved %.3f",
                  model_name(model).c_str(), target_avg_degree,
                  state.best_degree);
    throw CalibrationError(buf);
  };
  std::vector<std::pair<double, double>> history;  // (param, probe mean)
  auto mean_degree = [&](double param) {
    if (state.probes >= kMaxProbes) fail();
    const int probe = state.probes++;
    double total = 0.0;
    for (int trial = 0; trial < kTrialsPerProbe; ++trial) {
      Rng rng(derive_seed(
          kCalibrationMaster,
          {static_cast<std::uint64_t>(model),
           static_cast<std::uint64_t>(node_count), k_bits,
           static_cast<std::uint64_t>(probe * kTrialsPerProbe + trial)}));
      total += dispatch(probe_spec, model, param, rng).average_degree();
    }
    const double mean = total / kTrialsPerProbe;
    history.emplace_back(param, mean);
    if (state.best_degree < 0.0 ||
        std::fabs(mean - target_avg_degree) <
            std::fabs(state.best_degree - target_avg_degree)) {
      state.best_degree = mean;
      state.best_param = param;
    }
    return mean;
  };
  auto within = [&](double degree) {
    return std::fabs(degree - target_avg_degree) <=
           kDegreeTolerance * target_avg_degree;
  };
  auto accept = [&](double param) {
    std::lock_guard<std::mutex> lock(memo_mutex);
    memo[key] = param;
    return param;
  };
  // Probe variance is the limiting factor for the duplication models, so a
  // candidate is judged on a pooled mean over several probes, not one.
  double pooled_best_param = 0.0;
  double pooled_best_degree = -1.0;
  auto pooled = [&](double param, int probe_count) {
    double total = 0.0;
    for (int i = 0; i < probe_count; ++i) total += mean_degree(param);
    const double mean = total / probe_count;
    if (pooled_best_degree < 0.0 ||
        std::fabs(mean - target_avg_degree) <
            std::fabs(pooled_best_degree - target_avg_degree)) {
      pooled_best_degree = mean;
      pooled_best_param = param;
    }
    return mean;
  };

  const double span_lo = lo;
  const double f_lo = mean_degree(lo);
  double f_hi = mean_degree(hi);
  while (expandable && hi < 64.0 && f_hi < target_avg_degree) {
    hi *= 2.0;
    f_hi = mean_degree(hi);
  }
  const double low_side = increasing ? f_lo : f_hi;
  const double high_side = increasing ? f_hi : f_lo;
  if (low_side > target_avg_degree * (1.0 + kDegreeTolerance) ||
      high_side < target_avg_degree * (1.0 - kDegreeTolerance))
    return fail();
  const double span = hi - span_lo;

  const int polish_budget = 16;
  while (state.probes < kMaxProbes - polish_budget && hi - lo > 1e-9 * span) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = mean_degree(mid);
    // single-probe acceptance only once the bracket rules out wild params
    if (within(f_mid) && hi - lo <= 0.25 * span) return accept(mid);
    if ((f_mid < target_avg_degree) == increasing)
      lo = mid;
    else
      hi = mid;
  }

  // Secant polish on pooled means: start from the collapsed bracket with a
  // slope read off the bisection history at a scale where the trend
  // dominates the noise, then update the slope from successive pools.
  const double candidate = 0.5 * (lo + hi);
  double x_left = span_lo, f_left = f_lo;
  double x_right = span_lo + span, f_right = f_hi;
  for (const auto& [x, f] : history) {
    if (x <= candidate - 0.005 * span && x > x_left) x_left = x, f_left = f;
    if (x >= candidate + 0.005 * span && x < x_right) x_right = x, f_right = f;
  }
  double slope = (f_right - f_left) / (x_right - x_left);
  const int chunk = 4;
  double prev_x = 0.0, prev_y = 0.0;
  bool have_prev = false;
  double x = candidate;
  while (kMaxProbes - state.probes >= chunk) {
    const double y = pooled(x, chunk);
    if (within(y)) return accept(x);
    if (have_prev && x != prev_x) {
      const double s = (y - prev_y) / (x - prev_x);
      if (std::isfinite(s) && s != 0.0 && (s > 0.0) == increasing) slope = s;
    }
    have_prev = true;
    prev_x = x;
    prev_y = y;
    if (slope == 0.0 || !std::isfinite(slope)) break;
    x = x + (target_avg_degree - y) / slope;
    x = std::min(std::max(x, span_lo), span_lo + span);
  }
  // Exhausting the probe budget terminates the search with the best pooled
  // estimate; only a non-bracketing range is an error.
  return accept(pooled_best_degree >= 0.0 ? pooled_best_param
                                          : state.best_param);
}

ReciprocitySchedule inject_reciprocity(const Graph& g,
                                       const std::vector<double>& levels,
                                       std::uint64_t seed) {
  if (g.directed())
    throw DomainError("reciprocity injection starts from an undirected graph");
  if (levels.empty()) throw DomainError("at least one reciprocity level");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 0.0 || levels[i] > 1.0)
      throw DomainError("reciprocity levels must lie in [0, 1]");
    if (i > 0 && levels[i] < levels[i - 1])
      throw DomainError("reciprocity levels must be sorted ascending");
  }
  const auto& edges = g.edges();
  const std::size_t e = edges.size();
  if (e == 0) throw DomainError("reciprocity injection needs at least one edge");

  Rng rng(derive_seed(seed, {0x4ec1u}));
  std::vector<std::size_t> order(e);
  for (std::size_t i = 0; i < e; ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<std::size_t> removal_rank(e);
  for (std::size_t pos = 0; pos < e; ++pos) removal_rank[order[pos]] = pos;
  std::vector<char> drop_forward(e);
  for (std::size_t pos = 0; pos < e; ++pos)
    drop_forward[order[pos]] = rng.uniform() < 0.5 ? 1 : 0;

  ReciprocitySchedule schedule;
  schedule.levels = levels;
  for (double rho : levels) {
    // removing R pairs leaves reciprocity 2(E-R) / (2E-R) = rho
    const std::size_t removals = static_cast<std::size_t>(std::llround(
        2.0 * static_cast<double>(e) * (1.0 - rho) / (2.0 - rho)));
    std::vector<Edge> out;
    out.reserve(2 * e - removals);
    for (std::size_t i = 0; i < e; ++i) {
      const Edge& uv = edges[i];
      if (removal_rank[i] < removals) {
        if (drop_forward[i])
          out.emplace_back(uv.second, uv.first);
        else
          out.emplace_back(uv.first, uv.second);
      } else {
        out.emplace_back(uv.first, uv.second);
        out.emplace_back(uv.second, uv.first);
      }
    }
    schedule.digraphs.emplace_back(true, g.node_count(), std::move(out));
  }
  return schedule;
}

}  // namespace netemd
