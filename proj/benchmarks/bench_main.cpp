#include <benchmark/benchmark.h>

#include <cmath>

#include "oodlab/oodlab.hpp"

using namespace oodlab;

namespace {

std::vector<Point> disk_samples(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_n(DistributionSpec::uniform_ball(Point{0.0, 0.0}, 1.0), n, rng);
}

void BM_HullContains2d(benchmark::State& state) {
  const auto h = Hypothesis::convex_hull(disk_samples(state.range(0), 1));
  const auto probes = disk_samples(4096, 2);
  std::size_t i = 0, hits = 0;
  for (auto _ : state) hits += h.contains(probes[i++ & 4095]) ? 1 : 0;
  benchmark::DoNotOptimize(hits);
}
BENCHMARK(BM_HullContains2d)->Arg(100)->Arg(10000)->Arg(100000);

void BM_HullContains5d(benchmark::State& state) {
  Rng rng(3);
  const auto ball = DistributionSpec::uniform_ball(Point(std::vector<double>(5, 0.0)), 1.0);
  const auto h = Hypothesis::convex_hull(sample_n(ball, state.range(0), rng));
  const auto probes = sample_n(ball, 256, rng);
  std::size_t i = 0, hits = 0;
  for (auto _ : state) hits += h.contains(probes[i++ & 255]) ? 1 : 0;
  benchmark::DoNotOptimize(hits);
}
BENCHMARK(BM_HullContains5d)->Arg(200)->Arg(2000);

void BM_TukeyDepthExact(benchmark::State& state) {
  const auto pts = disk_samples(state.range(0), 4);
  const Point p{0.1, -0.2};
  for (auto _ : state) benchmark::DoNotOptimize(tukey_depth(pts, p));
}
BENCHMARK(BM_TukeyDepthExact)->Arg(1000)->Arg(10000);

void BM_TukeyDepthSampled(benchmark::State& state) {
  const auto pts = disk_samples(state.range(0), 4);
  const Point p{0.1, -0.2};
  for (auto _ : state) benchmark::DoNotOptimize(tukey_depth(pts, p, TukeyMode::sampled(64, 1)));
}
BENCHMARK(BM_TukeyDepthSampled)->Arg(1000)->Arg(10000);

void BM_FarOodFit(benchmark::State& state) {
  const auto pts = disk_samples(state.range(0), 5);
  for (auto _ : state) benchmark::DoNotOptimize(far_ood_fit(pts, 0.5));
}
BENCHMARK(BM_FarOodFit)->Arg(2119)->Arg(50000);

void BM_BallUnionEval(benchmark::State& state) {
  const auto h = far_ood_fit(disk_samples(state.range(0), 6), 0.05);
  Rng rng(7);
  const auto probes = sample_n(DistributionSpec::uniform_ball(Point{0.0, 0.0}, 1.5), 4096, rng);
  std::size_t i = 0, hits = 0;
  for (auto _ : state) hits += h.contains(probes[i++ & 4095]) ? 1 : 0;
  benchmark::DoNotOptimize(hits);
}
BENCHMARK(BM_BallUnionEval)->Arg(2119)->Arg(50000);

void BM_GridOccupancyFit(benchmark::State& state) {
  const auto plan = far_ood_plan(0.1, 0.1, 1.0, 0.05, 2);
  const auto grid = plan_grid(plan, Point{0.0, 0.0});
  const auto pts = disk_samples(state.range(0), 8);
  for (auto _ : state) benchmark::DoNotOptimize(grid_occupancy_fit(pts, grid));
}
BENCHMARK(BM_GridOccupancyFit)->Arg(10000)->Arg(100000);

void BM_DensityGridFit1d(benchmark::State& state) {
  const auto plan = density_grid_plan(0.2, 0.1, 1.0, 1, holder_to_g(1.0, 1.0));
  Rng rng(9);
  const auto pts = sample_n(DistributionSpec::uniform_box({-1.0}, {1.0}), plan.N, rng);
  for (auto _ : state) benchmark::DoNotOptimize(density_grid_fit(pts, plan));
}
BENCHMARK(BM_DensityGridFit1d);

}  // namespace
BENCHMARK_MAIN();
