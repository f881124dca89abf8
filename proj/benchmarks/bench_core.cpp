#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rocscale/bon.hpp"
#include "rocscale/rejection.hpp"
#include "rocscale/simulate.hpp"

using namespace rocscale;

namespace {

ScorePool make_pool(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<LabeledSample> samples(n);
  for (auto& s : samples) {
    s.label = unit(rng) < 0.4 ? 1 : 0;
    s.score = unit(rng);
    if (s.label == 1) s.score = std::min(1.0, s.score + 0.2);
  }
  samples[0].label = 1;
  samples[1].label = 0;
  return ScorePool(std::move(samples));
}

RocCurve bench_curve() {
  return RocCurve::from_points({{0.0, 0.0},
                                {0.05, 0.35},
                                {0.15, 0.6},
                                {0.35, 0.8},
                                {0.6, 0.92},
                                {1.0, 1.0}},
                               "bench");
}

}  // namespace

static void BM_EmpiricalRoc(benchmark::State& state) {
  auto pool = make_pool(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    auto curve = empirical_roc(pool);
    benchmark::DoNotOptimize(curve);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EmpiricalRoc)->Range(1 << 8, 1 << 16)->Complexity();

static void BM_BonAccuracy(benchmark::State& state) {
  auto curve = bench_curve();
  auto n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(bon::accuracy_single_integral(curve, 0.3, n));
}
BENCHMARK(BM_BonAccuracy)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_HIntegral(benchmark::State& state) {
  auto curve = bench_curve();
  auto k = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(bon::h_integral(curve, k, k));
}
BENCHMARK(BM_HIntegral)->Arg(5)->Arg(15)->Arg(30);

static void BM_RejectionProfile(benchmark::State& state) {
  auto curve = RocCurve::power(0.5, static_cast<int>(state.range(0)));
  std::vector<double> grid;
  for (int i = 1; i <= 64; ++i) grid.push_back(i / 64.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(rejection::profile(curve, 0.3, grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RejectionProfile)->Range(1 << 6, 1 << 12)->Complexity();

static void BM_SimulateBon(benchmark::State& state) {
  auto pool = make_pool(1000, 2);
  sim::SimulationConfig cfg;
  cfg.trials = static_cast<std::uint64_t>(state.range(0));
  cfg.threads = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(sim::simulate_bon(pool, 4, cfg));
}
BENCHMARK(BM_SimulateBon)->Arg(1000)->Arg(10000);

static void BM_Bootstrap(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> values(static_cast<std::size_t>(state.range(0)));
  for (auto& v : values) v = unit(rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(sim::bootstrap(values, 1000, 0.95, 7));
}
BENCHMARK(BM_Bootstrap)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
