#include <benchmark/benchmark.h>

#include <random>

#include "islandsim/config.hpp"
#include "islandsim/economics.hpp"
#include "islandsim/hps_agent.hpp"
#include "islandsim/pareto.hpp"
#include "islandsim/scenario.hpp"
#include "islandsim/simulation.hpp"
#include "islandsim/sweep.hpp"
#include "islandsim/uced.hpp"
#include "support/cases.hpp"

using namespace islandsim;

static void BM_UcedMicro(benchmark::State& state) {
  UcedProblem p;
  p.snapshot = oracle::random_micro_system(3);
  for (auto _ : state) benchmark::DoNotOptimize(solve_uced(p).objective);
}
BENCHMARK(BM_UcedMicro)->Unit(benchmark::kMillisecond);

static void BM_SelfDispatch(benchmark::State& state) {
  const auto c = oracle::random_hps_case(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(self_dispatch(c.plant, {c.production, c.absorption, 0}, c.res, c.soc).objective);
  }
}
BENCHMARK(BM_SelfDispatch)->Unit(benchmark::kMicrosecond);

static void BM_ExtractPareto(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<ParetoPoint> pts;
  for (int i = 0; i < state.range(0); ++i) {
    pts.push_back({"S" + std::to_string(i), oracle::uniform(rng, 0.3, 0.5), oracle::uniform(rng, 60, 200)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(extract_pareto(pts).size());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExtractPareto)->Range(8, 8 << 10)->Complexity();

static void BM_CapacityCredit(benchmark::State& state) {
  const auto load = oracle::peaky_days(365, 3);
  for (auto _ : state) benchmark::DoNotOptimize(capacity_credit(load, 45, 240, 0.8));
}
BENCHMARK(BM_CapacityCredit)->Unit(benchmark::kMillisecond);

static void BM_ReducedIslandDay(benchmark::State& state) {
  const Config cfg = default_config(true);
  const SeriesSet series = load_series(cfg.series);
  const auto mgmt = state.range(0) == 0 ? Management::central : Management::self;
  const ScenarioSystem sys = build_scenario_system(cfg, series, make_scenario(mgmt, 75, 30, 8));
  RunOptions opt = run_options(cfg);
  opt.days = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(sys, opt).hours.size());
}
BENCHMARK(BM_ReducedIslandDay)->Arg(0)->Arg(1)->Unit(benchmark::kSecond)->Iterations(1);
BENCHMARK_MAIN();
