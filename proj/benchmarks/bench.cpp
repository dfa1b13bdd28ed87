#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "netemd/atlas.hpp"
#include "netemd/distances.hpp"
#include "netemd/emd.hpp"
#include "netemd/gdm.hpp"
#include "netemd/graph.hpp"
#include "netemd/orbit_count.hpp"
#include "netemd/rng.hpp"

namespace {

netemd::Graph er_graph(netemd::NodeId n, double p, bool directed,
                       std::uint64_t seed) {
  netemd::Rng rng(seed);
  std::vector<netemd::Edge> edges;
  for (netemd::NodeId u = 0; u < n; ++u)
    for (netemd::NodeId v = directed ? 0 : u + 1; v < n; ++v) {
      if (u == v) continue;
      if (rng.uniform() < p) edges.push_back({u, v});
    }
  return netemd::Graph(directed, n, std::move(edges));
}

void BM_CountUndirected5(benchmark::State& state) {
  const auto n = static_cast<netemd::NodeId>(state.range(0));
  const auto g = er_graph(n, 8.0 / n, false, 17);
  const auto atlas = netemd::GraphletAtlas::build(false, 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(netemd::count_orbits(g, atlas));
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_CountDirected4(benchmark::State& state) {
  const auto n = static_cast<netemd::NodeId>(state.range(0));
  const auto g = er_graph(n, 8.0 / n, true, 18);
  const auto atlas = netemd::GraphletAtlas::build(true, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(netemd::count_orbits(g, atlas));
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_EmdStar(benchmark::State& state) {
  const auto points = static_cast<int>(state.range(0));
  netemd::Rng rng(19);
  std::vector<double> a(points), b(points);
  for (double& x : a) x = std::floor(rng.uniform(0.0, points / 4.0));
  for (double& x : b) x = std::floor(rng.uniform(0.0, points / 3.0));
  const auto p = netemd::EmpiricalDistribution::from_values(a);
  const auto q = netemd::EmpiricalDistribution::from_values(b);
  for (auto _ : state) benchmark::DoNotOptimize(netemd::emd_star(p, q));
}

void BM_EmdStarGolden(benchmark::State& state) {
  const auto points = static_cast<int>(state.range(0));
  netemd::Rng rng(19);
  std::vector<double> a(points), b(points);
  for (double& x : a) x = std::floor(rng.uniform(0.0, points / 4.0));
  for (double& x : b) x = std::floor(rng.uniform(0.0, points / 3.0));
  const auto p = netemd::EmpiricalDistribution::from_values(a);
  const auto q = netemd::EmpiricalDistribution::from_values(b);
  for (auto _ : state) benchmark::DoNotOptimize(netemd::emd_star_golden(p, q));
}

void BM_PairwiseNetEmd(benchmark::State& state) {
  const auto networks = static_cast<int>(state.range(0));
  const auto atlas = netemd::GraphletAtlas::build(false, 4);
  std::vector<netemd::NetEmdProfile> profiles;
  for (int i = 0; i < networks; ++i) {
    const auto g = er_graph(300, 8.0 / 300, false, 23 + i);
    profiles.emplace_back(netemd::NetworkData::from_counts(
        "net" + std::to_string(i), netemd::count_orbits(g, atlas)));
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(
        netemd::pairwise_netemd_profiles(profiles, false, 1));
  state.SetItemsProcessed(state.iterations() * networks * (networks - 1) / 2);
}

}  // namespace

BENCHMARK(BM_CountUndirected5)->Arg(100)->Arg(400)->Arg(1000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountDirected4)->Arg(100)->Arg(400)->Arg(1000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EmdStar)->Arg(16)->Arg(128)->Arg(1024);
BENCHMARK(BM_EmdStarGolden)->Arg(16)->Arg(128)->Arg(1024);
BENCHMARK(BM_PairwiseNetEmd)->Arg(10)->Arg(40)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
