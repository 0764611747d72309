#include <benchmark/benchmark.h>

#include <cmath>

#include "spatialgen/spatialgen.hpp"

using namespace spatialgen;

namespace {

LagCovariance exp_cov() {
  return [](double hx, double hy) { return std::exp(-8.0 * std::hypot(hx, hy)); };
}

Grid2D unit_grid(std::size_t n) {
  const double h = 1.0 / static_cast<double>(n);
  return Grid2D(n, n, h, h);
}

void BM_CirculantPlanAndSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RngStream stream(1);
  for (auto _ : state) {
    const EmbeddingPlan plan = plan_embedding(unit_grid(n), exp_cov());
    benchmark::DoNotOptimize(sample_embedded(plan, stream));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n * n));
}
BENCHMARK(BM_CirculantPlanAndSample)->RangeMultiplier(2)->Range(16, 512)->Complexity();

void BM_CirculantSampleOnly(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const EmbeddingPlan plan = plan_embedding(unit_grid(n), exp_cov());
  RngStream stream(2);
  for (auto _ : state) benchmark::DoNotOptimize(sample_embedded(plan, stream));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n * n));
}
BENCHMARK(BM_CirculantSampleOnly)->RangeMultiplier(2)->Range(16, 512)->Complexity();

void BM_DenseCholeskySample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid2D grid = unit_grid(n);
  const MvnSpec spec{Vector::Zero(static_cast<Eigen::Index>(grid.size())),
                     build_grid_covariance(grid, exp_cov()), MatrixKind::Covariance};
  RngStream stream(3);
  for (auto _ : state) {
    const DenseGaussianSampler sampler(spec);
    benchmark::DoNotOptimize(sampler.sample(stream));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(grid.size()));
}
BENCHMARK(BM_DenseCholeskySample)->RangeMultiplier(2)->Range(8, 32)->Complexity();

void BM_TorusSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TorusPlan plan = plan_torus(n, TorusExp(8.0, 1.0), 1e-4);
  RngStream stream(4);
  for (auto _ : state) benchmark::DoNotOptimize(sample_torus(plan, stream));
}
BENCHMARK(BM_TorusSample)->RangeMultiplier(2)->Range(32, 256);

void BM_GmrfBandCholesky(benchmark::State& state) {
  const LatticeGmrfSpec spec{static_cast<std::size_t>(state.range(0)), 2.0, -0.5};
  for (auto _ : state) benchmark::DoNotOptimize(GmrfSampler(spec));
}
BENCHMARK(BM_GmrfBandCholesky)->RangeMultiplier(2)->Range(16, 128);

void BM_GmrfSample(benchmark::State& state) {
  const GmrfSampler sampler({static_cast<std::size_t>(state.range(0)), 2.0, -0.5});
  RngStream stream(5);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample({}, stream));
}
BENCHMARK(BM_GmrfSample)->RangeMultiplier(2)->Range(16, 128);

void BM_FbmPath(benchmark::State& state) {
  const FbmPlan plan = plan_fbm(static_cast<std::size_t>(state.range(0)), 0.8);
  RngStream stream(6);
  for (auto _ : state) benchmark::DoNotOptimize(sample_fbm_pair(plan, stream));
}
BENCHMARK(BM_FbmPath)->RangeMultiplier(4)->Range(256, 65536);

void BM_StraussMhStep(benchmark::State& state) {
  RngStream stream(7);
  std::vector<Vec2> init(static_cast<std::size_t>(state.range(0)));
  for (auto& p : init) p = {stream.uniform(), stream.uniform()};
  ChainState st = make_chain_state(init, 0.05);
  const StraussParams params{100.0, 0.1, 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(mh_step(st, params, 0.1, stream));
}
BENCHMARK(BM_StraussMhStep)->Arg(200)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
