#include <benchmark/benchmark.h>

#include <cmath>

#include "mlpf/predictor/march.hpp"
#include "mlpf/sim/plants.hpp"
#include "mlpf/sim/run.hpp"
#include "mlpf/verify/transform.hpp"

namespace {

using namespace mlpf;

struct Setup {
  sim::ModelParams params;
  PlantModel plant;
  Grid grid;
  HistoryBuffer hist;
  SpatialProfile u;

  explicit Setup(int cells)
      : plant(sim::make_production_line(params, 2.0, sim::production_gains(params))),
        grid(2.0, cells),
        hist(HistoryBuffer::seeded(params.tau, 0.2 / cells, [](double s) { return 0.3 + 0.1 * s; })),
        u(SpatialProfile::sample(grid, [](double x) { return 0.5 + 0.1 * std::sin(x); })) {}
};

void BM_March(benchmark::State& state) {
  const Setup s(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(predictor::march_predictors(s.plant, s.grid, 0.3, s.hist, s.u, 0.0));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_March)->RangeMultiplier(2)->Range(80, 320)->Complexity(benchmark::oNSquared);

void BM_CloseBoundary(benchmark::State& state) {
  const Setup s(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(predictor::close_boundary(s.plant, s.grid, 0.3, s.hist, s.u, 0.0));
  }
}
BENCHMARK(BM_CloseBoundary)->Arg(80)->Arg(160);

void BM_Transform(benchmark::State& state) {
  const Setup s(static_cast<int>(state.range(0)));
  const auto bundle = predictor::march_predictors(s.plant, s.grid, 0.3, s.hist, s.u, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(verify::transform_w(s.plant, bundle, s.u));
}
BENCHMARK(BM_Transform)->Arg(80)->Arg(160);

// One second of the compensated experiment, without target diagnostics.
void BM_CompensatedSecond(benchmark::State& state) {
  sim::SimConfig cfg;
  cfg.t_final = 1.0;
  cfg.target_diagnostics = false;
  cfg.snapshot_every = 1u << 30;
  for (auto _ : state) benchmark::DoNotOptimize(sim::run_closed_loop(cfg));
}
BENCHMARK(BM_CompensatedSecond)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
