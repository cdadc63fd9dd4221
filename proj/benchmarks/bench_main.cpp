#include "sketchsdp/bounds.hpp"
#include "sketchsdp/core.hpp"
#include "sketchsdp/kmeans.hpp"
#include "sketchsdp/linalg.hpp"
#include "sketchsdp/sdp.hpp"
#include "sketchsdp/synth.hpp"

#include <benchmark/benchmark.h>

using namespace sketchsdp;

namespace {

Dataset norm10_sketch(Index s) {
  Rng rng(1);
  const auto data = norm10(rng);
  return sketch_uniform(data.data, s, Replacement::without, rng);
}

void BM_DistanceMatrix(benchmark::State& state) {
  const auto y = norm10_sketch(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(distance_matrix(y));
}
BENCHMARK(BM_DistanceMatrix)->Arg(100)->Arg(300)->Arg(1000);

void BM_Lloyd(benchmark::State& state) {
  Rng rng(2);
  const auto data = norm10(rng);
  for (auto _ : state) {
    const auto init = kmeanspp_init(data.data, 10, rng);
    benchmark::DoNotOptimize(lloyd(data.data, 10, init.centers));
  }
}
BENCHMARK(BM_Lloyd)->Unit(benchmark::kMillisecond);

void BM_ProjectPsd(benchmark::State& state) {
  Rng rng(3);
  std::normal_distribution<double> g;
  const Index n = state.range(0);
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = g(rng);
  }
  a = (0.5 * (a + a.transpose())).eval();
  for (auto _ : state) benchmark::DoNotOptimize(linalg::project_psd(a));
}
BENCHMARK(BM_ProjectPsd)->Arg(50)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_SdpSolve(benchmark::State& state) {
  const auto y = norm10_sketch(state.range(0));
  const auto problem = build_problem(y, 10);
  SolverConfig cfg;
  cfg.tol_primal = cfg.tol_dual = cfg.tol_gap = 1e-4;
  for (auto _ : state) benchmark::DoNotOptimize(solve(problem, cfg));
}
BENCHMARK(BM_SdpSolve)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
