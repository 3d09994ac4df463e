// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "thinv/analyzer.hpp"
#include "thinv/finite_section.hpp"
#include "thinv/fourier.hpp"
#include "thinv/wiener_hopf.hpp"

using namespace thinv;

namespace {
const PCSymbol kA1 = PCSymbol::constant(std::polar(1.0, kPi / 4)) * PCSymbol::power_arc(0.25);
const PCSymbol kT = PCSymbol::monomial(1);
}  // namespace

static void BM_FourierRange(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fourier_range(kA1, -n, n));
}
BENCHMARK(BM_FourierRange)->Arg(256)->Arg(1024);

static void BM_FourierQuadrature(benchmark::State& state) {
  const auto s = PCSymbol::inverse(PCSymbol::constant(3.0) + kA1);
  for (auto _ : state) benchmark::DoNotOptimize(fourier_coefficient(s, 5));
}
BENCHMARK(BM_FourierQuadrature);

static void BM_ToeplitzIndex(benchmark::State& state) {
  const auto pair = make_matching_pair(kA1, kA1 * kT);
  for (auto _ : state) benchmark::DoNotOptimize(toeplitz_index(pair.d, HardyExponent(3.0)));
}
BENCHMARK(BM_ToeplitzIndex);

static void BM_ThIndex(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(th_index(kA1, kA1 * kT, HardyExponent(3.0)));
}
BENCHMARK(BM_ThIndex);

static void BM_SectionKernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(section_kernel(kA1, kA1 * kT, -1, n));
}
BENCHMARK(BM_SectionKernel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Classify(benchmark::State& state) {
  const auto pair = make_matching_pair(kA1, kA1 * kT);
  for (auto _ : state) benchmark::DoNotOptimize(classify(pair, HardyExponent(1.5)));
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

static void BM_C0Series(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(c0_series(0.25));
}
BENCHMARK(BM_C0Series);
BENCHMARK_MAIN();
