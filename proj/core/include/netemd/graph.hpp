#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace netemd {

using NodeId = std::int32_t;
using Edge = std::pair<NodeId, NodeId>;

// Simple graph or digraph over nodes 0..n-1, immutable after construction.
// Undirected edges are stored once with u < v; the undirected neighbour view
// of a digraph is the union of in- and out-neighbours.
class Graph {
 public:
  // edges must be simple (no self-loops) and duplicate-free; undirected
  // pairs may come in either orientation and are normalized to u < v.
  Graph(bool directed, NodeId node_count, std::vector<Edge> edges);

  bool directed() const { return directed_; }
  NodeId node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  // Directed graphs: ordered query. Undirected graphs: symmetric.
  bool has_edge(NodeId u, NodeId v) const;

  const std::vector<NodeId>& out_neighbors(NodeId u) const { return out_[u]; }
  const std::vector<NodeId>& in_neighbors(NodeId u) const { return in_[u]; }
  // Undirected view; for undirected graphs identical to out_neighbors.
  const std::vector<NodeId>& neighbors(NodeId u) const { return und_[u]; }

  int degree(NodeId u) const { return static_cast<int>(und_[u].size()); }
  int out_degree(NodeId u) const { return static_cast<int>(out_[u].size()); }
  int in_degree(NodeId u) const { return static_cast<int>(in_[u].size()); }

  // Mean degree of the undirected view: 2 * (undirected pair count) / n.
  // Calibration targets and manifest reporting both use this quantity.
  double average_degree() const;

 private:
  bool directed_;
  NodeId node_count_;
  std::vector<Edge> edges_;  // sorted; undirected entries have u < v
  std::vector<std::vector<NodeId>> out_, in_, und_;
};

// Fraction of directed edges whose reverse is also present.
double reciprocity(const Graph& g);

// |E| / C(n,2) undirected, |E| / (n(n-1)) directed.
double density(const Graph& g);

struct LoadResult {
  Graph graph;
  std::vector<std::string> labels;  // internal id -> original token
  std::size_t duplicates_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

// Whitespace-separated "u v" lines, '#' starts a comment line. Labels are
// remapped to consecutive ids in first-appearance order; duplicates and
// self-loops are dropped (counted in the result).
LoadResult load_edge_list(std::istream& in, bool directed);

// Inverse of load_edge_list up to isomorphism; writes internal ids unless
// labels are given.
void write_edge_list(std::ostream& out, const Graph& g,
                     const std::vector<std::string>* labels = nullptr);

}  // namespace netemd
