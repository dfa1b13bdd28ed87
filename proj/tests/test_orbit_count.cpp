#include "netemd/orbit_count.hpp"

#include <doctest.h>

#include <cstdint>
#include <vector>

#include "netemd/atlas.hpp"
#include "netemd/errors.hpp"
#include "netemd/gdm.hpp"
#include "netemd/graph.hpp"
#include "netemd/rng.hpp"

using namespace netemd;

namespace {

Graph random_er(NodeId n, double p, bool directed, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = directed ? 0 : u + 1; v < n; ++v) {
      if (u == v) continue;
      if (rng.uniform() < p) edges.push_back({u, v});
    }
  return Graph(directed, n, std::move(edges));
}

Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> colsums(
    const GraphletDegreeMatrix& gdm) {
  return gdm.counts().colwise().sum().transpose();
}

}  // namespace

TEST_CASE("triangle rows") {
  const Graph g(false, 3, {{0, 1}, {0, 2}, {1, 2}});
  const auto atlas = GraphletAtlas::build(false, 3);
  const auto gdm = count_orbits(g, atlas);
  REQUIRE(gdm.node_count() == 3);
  REQUIRE(gdm.orbit_count() == 4);
  for (int v = 0; v < 3; ++v) {
    CHECK(gdm.counts()(v, 0) == 2);  // two incident edges
    CHECK(gdm.counts()(v, 1) == 0);
    CHECK(gdm.counts()(v, 2) == 0);
    CHECK(gdm.counts()(v, 3) == 1);  // the triangle itself
  }
}

TEST_CASE("3-path rows") {
  // 0-1-2: orbit 1 = path centre, orbit 2 = path end
  const Graph g(false, 3, {{0, 1}, {1, 2}});
  const auto gdm = count_orbits(g, GraphletAtlas::build(false, 3));
  const CountMatrix& c = gdm.counts();
  CHECK(c(0, 0) == 1);
  CHECK(c(0, 1) == 0);
  CHECK(c(0, 2) == 1);
  CHECK(c(0, 3) == 0);
  CHECK(c(1, 0) == 2);
  CHECK(c(1, 1) == 1);
  CHECK(c(1, 2) == 0);
  CHECK(c(1, 3) == 0);
  CHECK(c.row(2) == c.row(0));
}

TEST_CASE("directed 3-cycle rows") {
  const Graph g(true, 3, {{0, 1}, {1, 2}, {2, 0}});
  const auto atlas = GraphletAtlas::build(true, 3);
  const AdjCode cycle = (AdjCode{1} << dir_pair_bit(0, 1, 3)) |
                        (AdjCode{1} << dir_pair_bit(1, 2, 3)) |
                        (AdjCode{1} << dir_pair_bit(2, 0, 3));
  const int cyclic_orbit = atlas.classify(cycle, 3).orbit[0];
  const auto gdm = count_orbits(g, atlas);
  for (int v = 0; v < 3; ++v)
    for (int o = 0; o < gdm.orbit_count(); ++o) {
      const std::int64_t want =
          (o == 0 || o == 1 || o == cyclic_orbit) ? 1 : 0;
      CAPTURE(v);
      CAPTURE(o);
      CHECK(gdm.counts()(v, o) == want);
    }
}

TEST_CASE("ESU agrees with the subset-enumeration oracle") {
  const auto und = GraphletAtlas::build(false, 5);
  const auto dir = GraphletAtlas::build(true, 4);
  int checked = 0;
  for (bool directed : {false, true}) {
    const auto& atlas = directed ? dir : und;
    for (double p : {0.08, 0.2, 0.4}) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Graph g = random_er(12, p, directed,
                                  seed * 100 + (directed ? 7 : 0));
        const auto fast = count_orbits(g, atlas);
        const auto slow = brute_force_count(g, atlas);
        REQUIRE(fast.counts().rows() == slow.counts().rows());
        REQUIRE(fast.counts().cols() == slow.counts().cols());
        CHECK((fast.counts().array() == slow.counts().array()).all());
        CHECK(fast.key() == slow.key());
        ++checked;
      }
    }
  }
  CHECK(checked == 18);
}

TEST_CASE("isolated nodes contribute empty rows and change nothing else") {
  const Graph g = random_er(9, 0.3, false, 42);
  std::vector<Edge> edges = g.edges();
  const Graph padded(false, 11, std::move(edges));
  const auto atlas = GraphletAtlas::build(false, 4);
  const auto base = count_orbits(g, atlas);
  const auto ext = count_orbits(padded, atlas);
  CHECK((ext.counts().topRows(9).array() == base.counts().array()).all());
  CHECK((ext.counts().bottomRows(2).array() == 0).all());
}

TEST_CASE("column-sum identities") {
  SUBCASE("undirected: edge-endpoint column sums to 2|E|") {
    const Graph g = random_er(20, 0.25, false, 7);
    const auto gdm = count_orbits(g, GraphletAtlas::build(false, 4));
    CHECK(colsums(gdm)(0) ==
          static_cast<std::int64_t>(2 * g.edge_count()));
  }
  SUBCASE("directed: tail/head/reciprocal columns") {
    const Graph g = random_er(20, 0.15, true, 8);
    std::int64_t unreciprocated = 0;
    for (const auto& [u, v] : g.edges())
      if (!g.has_edge(v, u)) ++unreciprocated;
    const std::int64_t recip_pairs =
        (static_cast<std::int64_t>(g.edge_count()) - unreciprocated) / 2;
    const auto gdm = count_orbits(g, GraphletAtlas::build(true, 3));
    const auto s = colsums(gdm);
    CHECK(s(0) == unreciprocated);
    CHECK(s(1) == unreciprocated);
    CHECK(s(2) == 2 * recip_pairs);
  }
}

TEST_CASE("orbit column sums of one graphlet agree on the occurrence count") {
  const auto atlas = GraphletAtlas::build(false, 5);
  const Graph g = random_er(16, 0.3, false, 99);
  const auto gdm = count_orbits(g, atlas);
  const auto s = colsums(gdm);
  for (int gid = 0; gid < atlas.graphlet_count(); ++gid) {
    const auto& gl = atlas.graphlets()[gid];
    const int o0 = gl.first_orbit;
    for (int o = o0 + 1; o < o0 + gl.orbit_count; ++o) {
      // colsum(o) / cardinality(o) is the occurrence count of the graphlet
      CHECK(s(o) * atlas.orbit_cardinality(o0) ==
            s(o0) * atlas.orbit_cardinality(o));
    }
    CHECK(s(o0) % atlas.orbit_cardinality(o0) == 0);
  }
}

TEST_CASE("counting is equivariant under relabeling") {
  Rng rng(5);
  for (bool directed : {false, true}) {
    const auto atlas = GraphletAtlas::build(directed, directed ? 4 : 5);
    const Graph g = random_er(14, 0.25, directed, directed ? 11 : 12);
    std::vector<NodeId> perm(14);
    for (NodeId i = 0; i < 14; ++i) perm[i] = i;
    rng.shuffle(perm);
    std::vector<Edge> mapped;
    for (const auto& [u, v] : g.edges()) mapped.push_back({perm[u], perm[v]});
    const Graph h(directed, 14, std::move(mapped));
    const auto fg = count_orbits(g, atlas);
    const auto fh = count_orbits(h, atlas);
    for (NodeId v = 0; v < 14; ++v)
      CHECK((fh.counts().row(perm[v]).array() ==
             fg.counts().row(v).array()).all());
  }
}

TEST_CASE("worker count does not change the result") {
  for (bool directed : {false, true}) {
    const auto atlas = GraphletAtlas::build(directed, directed ? 4 : 5);
    const Graph g = random_er(18, 0.2, directed, 77);
    const auto one = count_orbits(g, atlas, 1);
    const auto four = count_orbits(g, atlas, 4);
    const auto eight = count_orbits(g, atlas, 8);
    CHECK((one.counts().array() == four.counts().array()).all());
    CHECK((one.counts().array() == eight.counts().array()).all());
  }
}

TEST_CASE("orbit_histogram") {
  CountMatrix c(3, 2);
  c << 1, 5, 1, 5, 2, 5;
  const GraphletDegreeMatrix gdm(c, AtlasKey{false, 3, 2});
  const auto h = orbit_histogram(gdm, 0);
  REQUIRE(h.size() == 2);
  CHECK(h.support()[0] == 1.0);
  CHECK(h.support()[1] == 2.0);
  CHECK(h.weights()[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(h.weights()[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const auto hc = orbit_histogram(gdm, 1);
  CHECK(hc.degenerate());
  CHECK(hc.support()[0] == 5.0);
  CHECK(hc.variance() == 0.0);
}

TEST_CASE("errors") {
  const Graph und(false, 3, {{0, 1}});
  const Graph dir(true, 3, {{0, 1}});
  const auto atlas = GraphletAtlas::build(false, 3);
  CHECK_THROWS_AS(count_orbits(dir, atlas), DomainError);
  CHECK_THROWS_AS(brute_force_count(dir, atlas), DomainError);
  CHECK_NOTHROW(count_orbits(und, atlas));
  const Graph big(false, 40, {{0, 1}});
  CHECK_THROWS_AS(brute_force_count(big, atlas), CapabilityError);
  CHECK_NOTHROW(count_orbits(big, atlas));
}
