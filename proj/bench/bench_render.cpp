#include <benchmark/benchmark.h>

#include "hecke/figures.hpp"
#include "hecke/instance_io.hpp"

using namespace hecke;

namespace {

const BInvolutionData& instance() {
  static const BInvolutionData data = read_instance_file(HECKE_DATA_DIR "/instance_d2.txt");
  return data;
}

void BM_RenderSerial(benchmark::State& state) {
  const auto& data = instance();
  const Viewport v = default_s_view(data, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(render_serial(SPlaneClassifier{&data, 40}, v));
  state.SetItemsProcessed(state.iterations() * v.px * v.py);
}

void BM_RenderParallel(benchmark::State& state) {
  const auto& data = instance();
  const Viewport v = default_s_view(data, static_cast<int>(state.range(0)));
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(render(SPlaneClassifier{&data, 40}, v, workers));
  state.SetItemsProcessed(state.iterations() * v.px * v.py);
}

void BM_CorrPlane(benchmark::State& state) {
  const auto& data = instance();
  const Viewport v{cplx(1.2, 0.0), 3.0, static_cast<int>(state.range(0)), static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(render(CorrPlaneClassifier{&data, 40}, v, 1));
}

}  // namespace

BENCHMARK(BM_RenderSerial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RenderParallel)->Args({256, 1})->Args({256, 4})->Args({256, 8})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorrPlane)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
