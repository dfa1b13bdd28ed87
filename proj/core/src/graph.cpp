#include "netemd/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "netemd/errors.hpp"

namespace netemd {

Graph::Graph(bool directed, NodeId node_count, std::vector<Edge> edges)
    : directed_(directed), node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ < 0) throw DomainError("negative node count");
  for (auto& e : edges_) {
    if (e.first < 0 || e.first >= node_count_ || e.second < 0 ||
        e.second >= node_count_)
      throw DomainError("edge endpoint out of range");
    if (e.first == e.second) throw DomainError("self-loop in edge set");
    if (!directed_ && e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw DomainError("duplicate edge in edge set");

  out_.resize(node_count_);
  in_.resize(node_count_);
  und_.resize(node_count_);
  for (const auto& [u, v] : edges_) {
    if (directed_) {
      out_[u].push_back(v);
      in_[v].push_back(u);
    } else {
      und_[u].push_back(v);
      und_[v].push_back(u);
    }
  }
  if (directed_) {
    for (NodeId u = 0; u < node_count_; ++u) {
      std::sort(in_[u].begin(), in_[u].end());
      // out_ is filled in sorted edge order, already sorted
      und_[u].resize(out_[u].size() + in_[u].size());
      auto end = std::set_union(out_[u].begin(), out_[u].end(),
                                in_[u].begin(), in_[u].end(), und_[u].begin());
      und_[u].erase(end, und_[u].end());
    }
  } else {
    for (NodeId u = 0; u < node_count_; ++u)
      std::sort(und_[u].begin(), und_[u].end());
    out_ = und_;
    in_ = und_;
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (directed_)
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
  return std::binary_search(und_[u].begin(), und_[u].end(), v);
}

double Graph::average_degree() const {
  if (node_count_ == 0) return 0.0;
  std::size_t total = 0;
  for (NodeId u = 0; u < node_count_; ++u) total += und_[u].size();
  return static_cast<double>(total) / node_count_;
}

double reciprocity(const Graph& g) {
  if (!g.directed()) throw DomainError("reciprocity requires a directed graph");
  if (g.edge_count() == 0)
    throw DomainError("reciprocity undefined for an empty edge set");
  std::size_t reciprocated = 0;
  for (const auto& [u, v] : g.edges())
    if (g.has_edge(v, u)) ++reciprocated;
  return static_cast<double>(reciprocated) / g.edge_count();
}

double density(const Graph& g) {
  const double n = g.node_count();
  if (n < 2) throw DomainError("density requires at least 2 nodes");
  const double pairs = g.directed() ? n * (n - 1) : n * (n - 1) / 2.0;
  return static_cast<double>(g.edge_count()) / pairs;
}

LoadResult load_edge_list(std::istream& in, bool directed) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::size_t duplicates = 0, self_loops = 0;
  // duplicate detection via a set of packed pairs
  std::unordered_map<std::uint64_t, bool> seen;

  auto intern = [&](const std::string& tok) {
    auto [it, inserted] = ids.emplace(tok, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(tok);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;  // blank line
    if (a[0] == '#') continue;
    if (!(ls >> b) || (ls >> extra))
      throw ParseError("edge list line " + std::to_string(line_no) +
                       ": expected exactly 2 tokens");
    NodeId u = intern(a), v = intern(b);
    if (u == v) {
      ++self_loops;
      continue;
    }
    NodeId cu = u, cv = v;
    if (!directed && cu > cv) std::swap(cu, cv);
    const std::uint64_t key =
        (static_cast<std::uint64_t>(cu) << 32) | static_cast<std::uint32_t>(cv);
    if (!seen.emplace(key, true).second) {
      ++duplicates;
      continue;
    }
    edges.emplace_back(u, v);
  }
  Graph g(directed, static_cast<NodeId>(labels.size()), std::move(edges));
  return LoadResult{std::move(g), std::move(labels), duplicates, self_loops};
}

void write_edge_list(std::ostream& out, const Graph& g,
                     const std::vector<std::string>* labels) {
  for (const auto& [u, v] : g.edges()) {
    if (labels)
      out << (*labels)[u] << ' ' << (*labels)[v] << '\n';
    else
      out << u << ' ' << v << '\n';
  }
}

}  // namespace netemd
