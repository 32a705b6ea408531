#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "braesslab/braess.hpp"
#include "braesslab/examples.hpp"
#include "braesslab/instances.hpp"
#include "braesslab/polymatroid.hpp"
#include "braesslab/solver.hpp"

using namespace braesslab;

namespace {

void bm_solve_example(benchmark::State& state, const char* name) {
  ExamplePair ex = build_example(name);
  for (auto _ : state) {
    WardropResult r = solve(ex.model);
    benchmark::DoNotOptimize(r.potential);
  }
}

void bm_solve_fig1(benchmark::State& state) { bm_solve_example(state, "fig1"); }
void bm_solve_fig2(benchmark::State& state) { bm_solve_example(state, "fig2"); }
void bm_solve_queue(benchmark::State& state) { bm_solve_example(state, "queue"); }

void bm_solve_random_matroid(benchmark::State& state) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(state.range(0)) * 7919 + 17);
  CongestionModel m = random_matroid_model(rng, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    WardropResult r = solve(m);
    benchmark::DoNotOptimize(r.gap);
  }
}

void bm_is_matroid_spanning_trees(benchmark::State& state) {
  std::vector<std::string> names;
  for (int i = 0; i < 6; ++i) names.push_back("e" + std::to_string(i));
  Clutter trees(GroundSet(names), spanning_trees(4, complete_graph_edges(4)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_matroid_base_family(trees));
  }
}

void bm_nonmatroid_witness(benchmark::State& state) {
  ExamplePair ex = build_example("fig1");
  const Clutter& clutter = ex.model.population_clutter(0);
  for (auto _ : state) {
    NonMatroidWitness w = nonmatroid_witness(clutter);
    benchmark::DoNotOptimize(w.a);
  }
}

void bm_greedy_min_base(benchmark::State& state) {
  std::mt19937_64 rng(1234);
  int n = 8;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("r" + std::to_string(i));
  GroundSet ground(names);
  WeightedRankSum ws(ground, {{1.5, Matroid(Clutter(ground, uniform_bases(n, 4)))},
                              {0.5, Matroid(Clutter(ground, random_matroid_bases(rng, n)))}});
  std::vector<double> weights(static_cast<size_t>(n));
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& w : weights) w = dist(rng);
  for (auto _ : state) {
    BaseVector x = greedy_min_base(ws, weights);
    benchmark::DoNotOptimize(x.data());
  }
}

void bm_detect_paradox_fig3(benchmark::State& state) {
  ExamplePair ex = build_example("fig3");
  for (auto _ : state) {
    ParadoxReport r = detect_paradox(ex.model, ex.reduction);
    benchmark::DoNotOptimize(r.verdict_strong);
  }
}

}  // namespace

BENCHMARK(bm_solve_fig1);
BENCHMARK(bm_solve_fig2);
BENCHMARK(bm_solve_queue);
BENCHMARK(bm_solve_random_matroid)->Arg(5)->Arg(8);
BENCHMARK(bm_is_matroid_spanning_trees);
BENCHMARK(bm_nonmatroid_witness);
BENCHMARK(bm_greedy_min_base);
BENCHMARK(bm_detect_paradox_fig3);

BENCHMARK_MAIN();
