// Serial reference vs optimised CA kernels, plus descriptor and baseline
// throughput on 200x200 images.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "cita/baselines.hpp"
#include "cita/ca_core.hpp"
#include "cita/descriptor.hpp"

namespace {

using namespace cita;

GrayImage random_image(int side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(0, 255);
  GrayImage img(side, side);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(dist(rng));
  return img;
}

const CitaParams kParams{1, 0.05, 158};

void BM_StepReference(benchmark::State& state) {
  const auto grid = ca::init_from_image(random_image(static_cast<int>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(ca::reference::step(grid, kParams));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}

void BM_StepSerial(benchmark::State& state) {
  const auto grid = ca::init_from_image(random_image(static_cast<int>(state.range(0)), 1));
  for (auto _ : state)
    benchmark::DoNotOptimize(ca::step(grid, kParams, ca::Execution::serial));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}

void BM_StepParallel(benchmark::State& state) {
  const auto grid = ca::init_from_image(random_image(static_cast<int>(state.range(0)), 1));
  for (auto _ : state)
    benchmark::DoNotOptimize(ca::step(grid, kParams, ca::Execution::parallel));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}

// Full 158-step run through the double-buffered engine vs repeated reference steps.
void BM_RunReference(benchmark::State& state) {
  const auto grid = ca::init_from_image(random_image(200, 2));
  for (auto _ : state) benchmark::DoNotOptimize(ca::reference::run(grid, kParams));
}

void BM_RunSerial(benchmark::State& state) {
  const auto grid = ca::init_from_image(random_image(200, 2));
  for (auto _ : state) benchmark::DoNotOptimize(ca::run(grid, kParams, ca::Execution::serial));
}

void BM_RunParallel(benchmark::State& state) {
  const auto grid = ca::init_from_image(random_image(200, 2));
  for (auto _ : state)
    benchmark::DoNotOptimize(ca::run(grid, kParams, ca::Execution::parallel));
}

void BM_ExtractAll(benchmark::State& state) {
  std::vector<GrayImage> imgs;
  for (int i = 0; i < 16; ++i) imgs.push_back(random_image(200, 10 + i));
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(extract_all(imgs, kParams));
  omp_set_num_threads(omp_get_num_procs());
  state.SetItemsProcessed(state.iterations() * 16);
}

void BM_Baseline(benchmark::State& state) {
  const auto method = baselines::kAllMethods[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(std::string(baselines::method_name(method)));
  const auto img = random_image(200, 3);
  for (auto _ : state) benchmark::DoNotOptimize(baselines::compute(method, img));
}

}  // namespace

BENCHMARK(BM_StepReference)->Arg(64)->Arg(200)->Arg(512);
BENCHMARK(BM_StepSerial)->Arg(64)->Arg(200)->Arg(512);
BENCHMARK(BM_StepParallel)->Arg(64)->Arg(200)->Arg(512)->UseRealTime();
BENCHMARK(BM_RunReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExtractAll)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Baseline)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
