#include <benchmark/benchmark.h>

#include "rmp/examples.hpp"
#include "rmp/jsr.hpp"
#include "rmp/parallel.hpp"
#include "rmp/randomwalk.hpp"
#include "rmp/stationary.hpp"

using namespace rmp;

namespace {

const RealField kR;

Subspace<RealField> e1_line() { return Subspace<RealField>::span(kR, {{1.0, 0.0, 0.0}}, 3); }

void BM_TrajectorySpectrum(benchmark::State& state) {
  const auto spec = examples::example(2);
  std::uint64_t k = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(trajectory_spectrum(spec, static_cast<std::size_t>(state.range(0)), RngStream(1, k++)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrajectorySpectrum)->Arg(500)->Arg(2000);

void BM_LyapunovSpectrum(benchmark::State& state) {
  set_thread_count(static_cast<std::size_t>(state.range(0)));
  const auto spec = examples::example(3);
  for (auto _ : state) benchmark::DoNotOptimize(lyapunov_spectrum(spec, 1000, 64, RngStream(2)));
  set_thread_count(0);
}
BENCHMARK(BM_LyapunovSpectrum)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_PadicSpectrum(benchmark::State& state) {
  const auto spec = examples::example_padic(2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(lyapunov_spectrum(spec, 100, 8, RngStream(3)));
}
BENCHMARK(BM_PadicSpectrum)->Unit(benchmark::kMillisecond);

void BM_JsrBounds(benchmark::State& state) {
  const auto spec = examples::example(2);
  const SkewChart<RealField> chart(e1_line());
  for (auto _ : state)
    benchmark::DoNotOptimize(compactness_certificate(spec, chart, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_JsrBounds)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SampleStationary(benchmark::State& state) {
  const auto spec = examples::example(2);
  const auto trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_stationary(spec, 200, trials, RngStream(4), TopDirection{}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleStationary)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_EnergyTest(benchmark::State& state) {
  const auto spec = examples::example(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = sample_stationary(spec, 200, n, RngStream(5, 1), TopDirection{});
  const auto b = sample_stationary(spec, 200, n, RngStream(5, 2), TopDirection{});
  for (auto _ : state) benchmark::DoNotOptimize(energy_test(a.points, b.points, RngStream(6)));
}
BENCHMARK(BM_EnergyTest)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
