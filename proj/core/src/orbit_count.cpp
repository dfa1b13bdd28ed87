#include "netemd/orbit_count.hpp"

#include <array>
#include <cassert>
#include <vector>

#include "netemd/errors.hpp"
#include "netemd/parallel.hpp"

namespace netemd {

namespace {

// Per-worker enumeration state. The extension sets of the recursion live in
// one shared pool vector addressed by [lo,hi) ranges, so the whole walk is
// allocation-free after warm-up.
struct EsuWalker {
  const Graph* g;
  const GraphletAtlas* atlas;
  int max_size;
  bool directed;
  NodeId root;
  CountMatrix* acc;

  std::array<const ClassifyEntry*, 6> tables{};
  std::vector<NodeId> sub;
  // Adjacency of sub[t] vs earlier members, one bit per earlier position.
  std::array<std::uint8_t, 5> to_new{};    // bit i: edge sub[i] -> sub[t]
  std::array<std::uint8_t, 5> from_new{};  // bit i: edge sub[t] -> sub[i]
  std::vector<NodeId> pool;
  std::vector<std::uint8_t> blocked;
  std::vector<NodeId> undo;

  void init(const Graph& graph, const GraphletAtlas& a) {
    g = &graph;
    atlas = &a;
    max_size = a.max_size();
    directed = a.directed();
    for (int s = 2; s <= max_size; ++s) tables[s] = a.table(s);
    sub.reserve(5);
    blocked.assign(graph.node_count(), 0);
  }

  void emit(int s) {
    AdjCode code = 0;
    if (directed) {
      for (int t = 1; t < s; ++t) {
        const std::uint8_t out_bits = to_new[t], in_bits = from_new[t];
        for (int i = 0; i < t; ++i) {
          if (out_bits & (1u << i))
            code |= AdjCode{1} << dir_pair_bit(i, t, s);
          if (in_bits & (1u << i))
            code |= AdjCode{1} << dir_pair_bit(t, i, s);
        }
      }
    } else {
      for (int t = 1; t < s; ++t) {
        const std::uint8_t bits = to_new[t];
        for (int i = 0; i < t; ++i)
          if (bits & (1u << i)) code |= AdjCode{1} << und_pair_bit(i, t);
      }
    }
    const ClassifyEntry& e = tables[s][code];
    assert(e.graphlet >= 0);
    for (int i = 0; i < s; ++i) ++(*acc)(sub[i], e.orbit[i]);
  }

  void push_member(NodeId w) {
    const int t = static_cast<int>(sub.size());
    std::uint8_t out_bits = 0, in_bits = 0;
    if (directed) {
      for (int i = 0; i < t; ++i) {
        if (g->has_edge(sub[i], w)) out_bits |= 1u << i;
        if (g->has_edge(w, sub[i])) in_bits |= 1u << i;
      }
    } else {
      for (int i = 0; i < t; ++i)
        if (g->has_edge(sub[i], w)) out_bits |= 1u << i;
    }
    to_new[t] = out_bits;
    from_new[t] = in_bits;
    sub.push_back(w);
  }

  void extend(std::size_t lo, std::size_t hi) {
    const int t = static_cast<int>(sub.size());
    while (hi > lo) {
      const NodeId w = pool[--hi];
      push_member(w);
      emit(t + 1);
      if (t + 1 < max_size) {
        // Child extension set: remaining siblings plus w's exclusive
        // neighbours (unblocked, id above the root).
        const std::size_t child_lo = pool.size();
        for (std::size_t k = lo; k < hi; ++k) pool.push_back(pool[k]);
        const std::size_t undo_mark = undo.size();
        for (NodeId u : g->neighbors(w)) {
          if (u > root && !blocked[u]) {
            blocked[u] = 1;
            undo.push_back(u);
            pool.push_back(u);
          }
        }
        extend(child_lo, pool.size());
        pool.resize(child_lo);
        while (undo.size() > undo_mark) {
          blocked[undo.back()] = 0;
          undo.pop_back();
        }
      }
      sub.pop_back();
    }
  }

  void run_root(NodeId v, CountMatrix& out) {
    root = v;
    acc = &out;
    sub.clear();
    sub.push_back(v);
    pool.clear();
    undo.clear();
    blocked[v] = 1;
    for (NodeId u : g->neighbors(v)) {
      if (u > v) {
        blocked[u] = 1;
        undo.push_back(u);
        pool.push_back(u);
      }
    }
    extend(0, pool.size());
    blocked[v] = 0;
    for (NodeId u : undo) blocked[u] = 0;
  }
};

}  // namespace

GraphletDegreeMatrix count_orbits(const Graph& g, const GraphletAtlas& atlas,
                                  int workers) {
  if (g.directed() != atlas.directed())
    throw DomainError("graph directedness does not match the atlas");
  const NodeId n = g.node_count();
  const int m = atlas.orbit_count();
  const AtlasKey key{atlas.directed(), atlas.max_size(), m};

  if (workers < 1) workers = 1;
  std::vector<CountMatrix> accs(workers);
  std::vector<EsuWalker> walkers(workers);
  for (int w = 0; w < workers; ++w) {
    accs[w] = CountMatrix::Zero(n, m);
    walkers[w].init(g, atlas);
  }

  parallel_for(static_cast<std::size_t>(n), workers,
               [&](std::size_t v, int w) {
                 walkers[w].run_root(static_cast<NodeId>(v), accs[w]);
               });

  CountMatrix total = std::move(accs[0]);
  for (int w = 1; w < workers; ++w) total += accs[w];
  return GraphletDegreeMatrix(std::move(total), key);
}

GraphletDegreeMatrix brute_force_count(const Graph& g,
                                       const GraphletAtlas& atlas) {
  if (g.directed() != atlas.directed())
    throw DomainError("graph directedness does not match the atlas");
  const int n = g.node_count();
  if (n > 32)
    throw CapabilityError("brute_force_count supports at most 32 nodes");
  const int m = atlas.orbit_count();
  CountMatrix counts = CountMatrix::Zero(n, m);
  const bool directed = atlas.directed();

  std::array<int, 5> pick{};
  for (int s = 2; s <= atlas.max_size(); ++s) {
    if (s > n) break;
    // lexicographic combinations of s node indices
    for (int i = 0; i < s; ++i) pick[i] = i;
    for (;;) {
      // induced adjacency code + weak-connectivity flood fill
      AdjCode code = 0;
      std::array<unsigned, 5> link{};
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
          if (i == j) continue;
          if (directed) {
            if (g.has_edge(pick[i], pick[j])) {
              code |= AdjCode{1} << dir_pair_bit(i, j, s);
              link[i] |= 1u << j;
              link[j] |= 1u << i;
            }
          } else if (i < j && g.has_edge(pick[i], pick[j])) {
            code |= AdjCode{1} << und_pair_bit(i, j);
            link[i] |= 1u << j;
            link[j] |= 1u << i;
          }
        }
      unsigned reached = 1u, frontier = 1u;
      while (frontier) {
        unsigned nxt = 0;
        for (int i = 0; i < s; ++i)
          if (frontier & (1u << i)) nxt |= link[i];
        frontier = nxt & ~reached;
        reached |= nxt;
      }
      if (reached == (1u << s) - 1u) {
        const auto cls = atlas.classify(code, s);
        for (int i = 0; i < s; ++i) ++counts(pick[i], cls.orbit[i]);
      }

      int k = s - 1;
      while (k >= 0 && pick[k] == n - s + k) --k;
      if (k < 0) break;
      ++pick[k];
      for (int j = k + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return GraphletDegreeMatrix(std::move(counts),
                              AtlasKey{directed, atlas.max_size(), m});
}

}  // namespace netemd
