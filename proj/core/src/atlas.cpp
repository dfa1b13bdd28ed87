#include "netemd/atlas.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "netemd/errors.hpp"
#include "netemd/gdm.hpp"

namespace netemd {

namespace {

int code_bits(bool directed, int s) {
  return directed ? s * (s - 1) : s * (s - 1) / 2;
}

std::vector<std::vector<int>> all_permutations(int s) {
  std::vector<int> p(s);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return perms;
}

AdjCode permute_code(AdjCode code, const std::vector<int>& perm, bool directed,
                     int s) {
  AdjCode out = 0;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      if (i == j) continue;
      if (!directed && i > j) continue;
      const int bit = directed ? dir_pair_bit(i, j, s) : und_pair_bit(i, j);
      if (code & (AdjCode{1} << bit)) {
        const int pbit = directed ? dir_pair_bit(perm[i], perm[j], s)
                                  : und_pair_bit(perm[i], perm[j]);
        out |= AdjCode{1} << pbit;
      }
    }
  return out;
}

// Weak connectivity of the code's graph via bitmask flood fill.
bool code_connected(AdjCode code, bool directed, int s) {
  std::array<unsigned, 5> adj{};
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) {
      bool linked;
      if (directed)
        linked = (code & (AdjCode{1} << dir_pair_bit(i, j, s))) ||
                 (code & (AdjCode{1} << dir_pair_bit(j, i, s)));
      else
        linked = code & (AdjCode{1} << und_pair_bit(i, j));
      if (linked) {
        adj[i] |= 1u << j;
        adj[j] |= 1u << i;
      }
    }
  unsigned reached = 1u, frontier = 1u;
  while (frontier) {
    unsigned next = 0;
    for (int i = 0; i < s; ++i)
      if (frontier & (1u << i)) next |= adj[i];
    frontier = next & ~reached;
    reached |= next;
  }
  return reached == (1u << s) - 1;
}

}  // namespace

GraphletAtlas GraphletAtlas::build(bool directed, int max_size) {
  if (directed && max_size == 5)
    throw CapabilityError(
        "directed graphlets of size 5 are unsupported (45,637 orbits)");
  if (max_size < 3 || max_size > 5 || (directed && max_size > 4))
    throw DomainError("max_size must be 3..5 undirected or 3..4 directed");

  GraphletAtlas atlas;
  atlas.directed_ = directed;
  atlas.max_size_ = max_size;
  atlas.tables_.resize(max_size + 1);

  for (int s = 2; s <= max_size; ++s) {
    const int bits = code_bits(directed, s);
    const auto perms = all_permutations(s);
    auto& table = atlas.tables_[s];
    table.assign(std::size_t{1} << bits, ClassifyEntry{});

    // canonical code -> (for each labeled code of the class: code, map
    // labeled position -> canonical position)
    struct LabeledInfo {
      AdjCode code;
      std::vector<int> to_canonical;
    };
    std::map<AdjCode, std::vector<LabeledInfo>> classes;

    for (AdjCode code = 0; code < (AdjCode{1} << bits); ++code) {
      if (!code_connected(code, directed, s)) continue;
      AdjCode canon = code;
      const std::vector<int>* arg = &perms[0];
      for (const auto& p : perms) {
        AdjCode c = permute_code(code, p, directed, s);
        if (c < canon) {
          canon = c;
          arg = &p;
        }
      }
      classes[canon].push_back(LabeledInfo{code, *arg});
    }

    // std::map iterates canonical codes ascending, fixing graphlet order.
    for (auto& [canon, members] : classes) {
      Graphlet g;
      g.canonical_code = canon;
      g.size = s;
      g.first_orbit = atlas.orbit_count_;

      // automorphism classes of the canonical positions, union-find
      std::array<int, 5> parent;
      std::iota(parent.begin(), parent.begin() + s, 0);
      auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (const auto& p : perms)
        if (permute_code(canon, p, directed, s) == canon)
          for (int i = 0; i < s; ++i) {
            int a = find(i), b = find(p[i]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
          }

      // orbits ordered by smallest canonical position index; union-find
      // roots are minima, so ascending root order is that order.
      g.orbit_of_position.resize(s);
      std::map<int, int> root_to_orbit;
      for (int i = 0; i < s; ++i) {
        int r = find(i);
        auto [it, inserted] =
            root_to_orbit.emplace(r, atlas.orbit_count_);
        if (inserted) {
          ++atlas.orbit_count_;
          atlas.orbit_cardinality_.push_back(0);
          atlas.orbit_graphlet_.push_back(
              static_cast<int>(atlas.graphlets_.size()));
        }
        g.orbit_of_position[i] = it->second;
        ++atlas.orbit_cardinality_[it->second];
      }
      g.orbit_count = atlas.orbit_count_ - g.first_orbit;

      const int gid = static_cast<int>(atlas.graphlets_.size());
      for (const auto& info : members) {
        ClassifyEntry e;
        e.graphlet = static_cast<std::int16_t>(gid);
        for (int pos = 0; pos < s; ++pos)
          e.orbit[pos] = static_cast<std::int16_t>(
              g.orbit_of_position[info.to_canonical[pos]]);
        table[info.code] = e;
      }
      atlas.graphlets_.push_back(std::move(g));
    }
  }
  return atlas;
}

std::vector<int> GraphletAtlas::orbits_up_to_size(int size) const {
  std::vector<int> out;
  for (const auto& g : graphlets_)
    if (g.size <= size)
      for (int o = g.first_orbit; o < g.first_orbit + g.orbit_count; ++o)
        out.push_back(o);
  std::sort(out.begin(), out.end());
  return out;
}

GraphletAtlas::Classified GraphletAtlas::classify(AdjCode code,
                                                  int size) const {
  if (size < 2 || size > max_size_)
    throw DomainError("classify: size " + std::to_string(size) +
                      " outside atlas range");
  if (code >= tables_[size].size())
    throw DomainError("classify: adjacency code out of range");
  const ClassifyEntry& e = tables_[size][code];
  if (e.graphlet < 0)
    throw DomainError("classify: code describes a disconnected graph");
  Classified c;
  c.graphlet_id = e.graphlet;
  for (int i = 0; i < size; ++i) c.orbit[i] = e.orbit[i];
  return c;
}

void GraphletAtlas::dump(
    std::ostream& out,
    const std::vector<std::pair<int, int>>* remap) const {
  std::vector<int> translate(orbit_count_);
  std::iota(translate.begin(), translate.end(), 0);
  if (remap)
    for (const auto& [internal, external] : *remap) translate[internal] = external;

  out << "graphlet_id\tsize\tcanonical_code\torbit_ids\n";
  for (std::size_t gid = 0; gid < graphlets_.size(); ++gid) {
    const auto& g = graphlets_[gid];
    out << gid << '\t' << g.size << '\t';
    char hex[16];
    std::snprintf(hex, sizeof hex, "0x%x", g.canonical_code);
    out << hex << '\t';
    for (int i = 0; i < g.size; ++i) {
      if (i) out << ',';
      out << translate[g.orbit_of_position[i]];
    }
    out << '\n';
  }
}

std::vector<std::pair<int, int>> load_orbit_remap(std::istream& in,
                                                  int orbit_count) {
  std::vector<std::pair<int, int>> remap;
  std::vector<bool> seen(orbit_count, false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string a;
    if (!(ls >> a) || a[0] == '#') continue;
    int internal, external;
    std::string extra;
    std::istringstream reparse(line);
    if (!(reparse >> internal >> external) || (reparse >> extra))
      throw ParseError("orbit remap line " + std::to_string(line_no) +
                       ": expected two integer columns");
    if (internal < 0 || internal >= orbit_count)
      throw ParseError("orbit remap line " + std::to_string(line_no) +
                       ": internal id out of range");
    if (seen[internal])
      throw ParseError("orbit remap line " + std::to_string(line_no) +
                       ": duplicate internal id");
    seen[internal] = true;
    remap.emplace_back(internal, external);
  }
  return remap;
}

const GraphletAtlas& atlas_for(const AtlasKey& key) {
  static std::mutex mu;
  static std::map<std::pair<bool, int>, std::unique_ptr<GraphletAtlas>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{key.directed, key.max_size}];
  if (!slot)
    slot = std::make_unique<GraphletAtlas>(
        GraphletAtlas::build(key.directed, key.max_size));
  if (slot->orbit_count() != key.orbit_count)
    throw DomainError("atlas key orbit count does not match the atlas");
  return *slot;
}

}  // namespace netemd
