#include <benchmark/benchmark.h>

#include "leosg/channel.hpp"

namespace {

using namespace leosg;

void BM_SmallScaleDraw(benchmark::State& state, SmallScaleModel model) {
  RngStream rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(sample_small_scale(model, rng));
}
BENCHMARK_CAPTURE(BM_SmallScaleDraw, rayleigh, SmallScaleModel{Rayleigh{}});
BENCHMARK_CAPTURE(BM_SmallScaleDraw, rician, SmallScaleModel{Rician{3.0}});
BENCHMARK_CAPTURE(BM_SmallScaleDraw, shadowed_rician, SmallScaleModel{ShadowedRician{}});
BENCHMARK_CAPTURE(BM_SmallScaleDraw, heavy_shadowing, SmallScaleModel{ShadowedRician{0.063, 0.739, 8.97e-4}});

void BM_SrPdf(benchmark::State& state) {
  const ShadowedRician p;
  double w = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sr_pdf(w, p.b, p.m, p.omega));
    w = w < 10.0 ? w * 1.1 : 0.01;
  }
}
BENCHMARK(BM_SrPdf);

void BM_Hypergeometric1F1(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(log_hypergeometric_1f1(19.4, 1.0, x));
}
BENCHMARK(BM_Hypergeometric1F1)->Arg(1)->Arg(50)->Arg(1000);

}  // namespace
