#include <benchmark/benchmark.h>

#include "rbsim/config.hpp"
#include "rbsim/figures.hpp"
#include "rbsim/operating_point.hpp"
#include "rbsim/ray_optics.hpp"
#include "rbsim/sweep_engine.hpp"

namespace {

using namespace rbsim;

void BM_OneTripMatrix(benchmark::State& state) {
  const ModelParameters mp = resolve(builtin_preset("paper-2022"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(optics::one_trip_matrix(mp.geometry));
  }
}
BENCHMARK(BM_OneTripMatrix);

void BM_SpotRadius(benchmark::State& state) {
  const ModelParameters mp = resolve(builtin_preset("paper-2022"));
  const optics::RayTransferMatrix m = optics::one_trip_matrix(mp.geometry);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optics::spot_radius_on_gain(m, mp.geometry.lambda_beam));
  }
}
BENCHMARK(BM_SpotRadius);

void BM_EvaluateParameters(benchmark::State& state) {
  const ModelParameters mp = resolve(builtin_preset("paper-2022"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_operating_point(mp));
  }
}
BENCHMARK(BM_EvaluateParameters);

// Includes resolving the configuration (stability edge for fr2_margin).
void BM_EvaluateConfig(benchmark::State& state) {
  const Config c = builtin_preset("paper-2022");
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_operating_point(c));
  }
}
BENCHMARK(BM_EvaluateConfig);

void BM_ParseConfig(benchmark::State& state) {
  const std::string text(preset_text("paper-2022"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_config(text));
  }
}
BENCHMARK(BM_ParseConfig);

void BM_Sweep2D(benchmark::State& state) {
  sweep::SweepSpec spec;
  spec.axes = {sweep::Axis::linear("geometry.M", 1.0, 14.0, 121),
               sweep::Axis::linear("geometry.d3", 2.0, 10.0, 121)};
  sweep::SweepOptions opts;
  opts.workers = static_cast<int>(state.range(0));
  const Config base = builtin_preset("paper-2022");
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep::run_sweep(spec, base, opts));
  }
  state.SetItemsProcessed(state.iterations() * 121 * 121);
}
BENCHMARK(BM_Sweep2D)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FindOptimumR2(benchmark::State& state) {
  Config base = builtin_preset("paper-2022");
  set_parameter(base, "pump.p_in", 100.0);
  sweep::SweepSpec spec;
  spec.axes = {sweep::Axis::linear("geometry.r2", 0.8, 0.999, 121)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sweep::find_optimum(spec, "p_beam", sweep::Sense::kMaximize, base));
  }
}
BENCHMARK(BM_FindOptimumR2)->Unit(benchmark::kMillisecond);

void BM_ReproduceFigure(benchmark::State& state) {
  const std::string id = figures::figure_ids()[static_cast<std::size_t>(state.range(0))];
  state.SetLabel("fig " + id);
  const Config base = builtin_preset("paper-2022");
  for (auto _ : state) {
    benchmark::DoNotOptimize(figures::reproduce_figure(id, base));
  }
}
BENCHMARK(BM_ReproduceFigure)->DenseRange(0, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
