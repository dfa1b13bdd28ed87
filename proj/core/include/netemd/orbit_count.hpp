#pragma once

#include "netemd/atlas.hpp"
#include "netemd/gdm.hpp"
#include "netemd/graph.hpp"

namespace netemd {

// ESU-style enumeration of every connected induced subgraph of size
// 2..atlas.max_size (weak connectivity for digraphs), each node set visited
// exactly once; classification via the atlas table. Parallel over
// enumeration roots; the result is independent of the worker count.
GraphletDegreeMatrix count_orbits(const Graph& g, const GraphletAtlas& atlas,
                                  int workers = 1);

// Test oracle: iterates all C(n,s) node subsets per size, keeps the
// (weakly) connected ones, classifies, accumulates. n <= 32.
GraphletDegreeMatrix brute_force_count(const Graph& g,
                                       const GraphletAtlas& atlas);

}  // namespace netemd
