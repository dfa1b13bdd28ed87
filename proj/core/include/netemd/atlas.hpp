#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace netemd {

// Adjacency code of a labeled graph on s nodes (s <= 5), one bit per node
// pair. Directed: bit i*(s-1) + (j - (j>i)) for the ordered pair (i,j).
// Undirected: bit j*(j-1)/2 + i for the pair i < j. Codes compare as
// integers; the canonical code of an isomorphism class is the minimum over
// all node permutations.
using AdjCode = std::uint32_t;

inline int dir_pair_bit(int i, int j, int s) {
  return i * (s - 1) + (j - (j > i ? 1 : 0));
}
inline int und_pair_bit(int i, int j) {
  if (i > j) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}

struct Graphlet {
  AdjCode canonical_code;
  int size;
  int first_orbit;                  // global id of this graphlet's first orbit
  int orbit_count;                  // distinct automorphism classes
  std::vector<int> orbit_of_position;  // canonical position -> global orbit id
};

// Classification record for one labeled adjacency code. graphlet < 0 marks
// codes whose graph is not (weakly) connected.
struct ClassifyEntry {
  std::int16_t graphlet = -1;
  std::array<std::int16_t, 5> orbit{};  // input position -> global orbit id
};

// All non-isomorphic connected (di)graphs of sizes 2..max_size with global
// graphlet and orbit ids, plus an O(1) labeled-code classification table.
// Immutable after build; safe for concurrent reads.
class GraphletAtlas {
 public:
  static GraphletAtlas build(bool directed, int max_size);

  bool directed() const { return directed_; }
  int max_size() const { return max_size_; }
  int graphlet_count() const { return static_cast<int>(graphlets_.size()); }
  int orbit_count() const { return orbit_count_; }
  const std::vector<Graphlet>& graphlets() const { return graphlets_; }

  int orbit_graphlet(int orbit_id) const { return orbit_graphlet_[orbit_id]; }
  // Number of canonical positions sharing the orbit.
  int orbit_cardinality(int orbit_id) const {
    return orbit_cardinality_[orbit_id];
  }
  // Orbit ids whose graphlet has size <= size, ascending.
  std::vector<int> orbits_up_to_size(int size) const;

  struct Classified {
    int graphlet_id;
    std::array<int, 5> orbit;  // first `size` entries valid
  };
  // code must describe a (weakly) connected graph on `size` nodes.
  Classified classify(AdjCode code, int size) const;

  // Raw table for the counting inner loop; indexed by labeled code.
  const ClassifyEntry* table(int size) const { return tables_[size].data(); }

  // TSV: graphlet_id, size, canonical code hex, comma-joined orbit ids.
  // remap translates internal orbit ids for presentation when given.
  void dump(std::ostream& out,
            const std::vector<std::pair<int, int>>* remap = nullptr) const;

 private:
  GraphletAtlas() = default;

  bool directed_ = false;
  int max_size_ = 0;
  int orbit_count_ = 0;
  std::vector<Graphlet> graphlets_;
  std::vector<int> orbit_graphlet_;
  std::vector<int> orbit_cardinality_;
  std::vector<std::vector<ClassifyEntry>> tables_;  // per size, 2^bits entries
};

// Two whitespace-separated columns per line: internal id, external id.
// '#' starts a comment.
std::vector<std::pair<int, int>> load_orbit_remap(std::istream& in,
                                                  int orbit_count);

struct AtlasKey;

// Process-wide memoized atlas lookup keyed by (directed, max_size); the
// key's orbit count is validated against the built atlas.
const GraphletAtlas& atlas_for(const AtlasKey& key);

}  // namespace netemd
