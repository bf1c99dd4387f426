#include "dendra/matgrp.hpp"
#include "dendra/ordering.hpp"
#include "dendra/realize.hpp"
#include "dendra/tower.hpp"

#include <benchmark/benchmark.h>

namespace {

std::vector<dendra::GroupMatrix> unipotent_generators(std::size_t n, std::uint64_t m) {
  std::vector<dendra::GroupMatrix> gens;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (i != j) gens.push_back(dendra::elementary(n, i, j, 1, m));
  return gens;
}

void BM_EnumerateSL3Mod2(benchmark::State& state) {
  const auto gens = unipotent_generators(3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(dendra::enumerate_group(3, 2, gens).order());
}
BENCHMARK(BM_EnumerateSL3Mod2);

void BM_EnumerateSL3Mod4(benchmark::State& state) {
  const auto gens = unipotent_generators(3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(dendra::enumerate_group(3, 4, gens).order());
}
BENCHMARK(BM_EnumerateSL3Mod4)->Unit(benchmark::kMillisecond);

void BM_CongruenceTower(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dendra::build_congruence_tower(3, 2, depth).levels.size());
}
BENCHMARK(BM_CongruenceTower)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_VerifyBond(benchmark::State& state) {
  const auto sys = dendra::build_congruence_tower(3, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(dendra::verify_equivariant_bond(sys, 1).pass);
}
BENCHMARK(BM_VerifyBond)->Unit(benchmark::kMillisecond);

void BM_SearchInvariant(benchmark::State& state) {
  auto preset = dendra::order_preset(state.range(0) == 0 ? "z2-ball-1" : "heisenberg-ball-2");
  const dendra::Ball b = dendra::ball_generate(preset.generators, preset.radius, preset.generator_names);
  auto b2 = std::make_shared<const dendra::Ball>(
      dendra::ball_generate(preset.generators, preset.radius + 1, preset.generator_names));
  std::vector<dendra::GroupMatrix> f;
  for (const auto& g : preset.generators) {
    f.push_back(g);
    f.push_back(g.inverse());
  }
  for (auto _ : state) benchmark::DoNotOptimize(dendra::search_invariant(f, b, b2).branches);
}
BENCHMARK(BM_SearchInvariant)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RealizeZ(benchmark::State& state) {
  const std::vector<dendra::GroupMatrix> t{dendra::elementary(2, 1, 2, 1)};
  auto ball = std::make_shared<const dendra::Ball>(dendra::ball_generate(t, static_cast<std::size_t>(state.range(0))));
  std::vector<long long> rank;
  for (const auto& m : ball->elements()) rank.push_back(m(0, 1).get_si());
  const auto order = dendra::OrderAssignment::from_ranks(ball, rank);
  for (auto _ : state) benchmark::DoNotOptimize(dendra::realize(ball->discovery_order(), order).t.size());
}
BENCHMARK(BM_RealizeZ)->Arg(10)->Arg(100);

}  // namespace
BENCHMARK_MAIN();
