// bench_kernels.cpp
// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "torus_green/mfe.hpp"
#include "torus_green/moduli.hpp"

namespace {

const tg::Region kRegion{-0.5, 0.4, 0.5, 1.2};

void BM_ScanSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tg::scan_serial(kRegion, n, n, 1e-11));
}

void BM_ScanParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tg::scan(kRegion, n, n, 1e-11));
}

const tg::MfeSolution& hexagonal_solution() {
  static const tg::MfeSolution sol =
      tg::solution_8pi(tg::make_torus(std::exp(std::complex<double>(0.0, std::numbers::pi / 3.0))));
  return sol;
}

void BM_VerifySerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tg::verify_solution_serial(hexagonal_solution(), n, 0.05));
}

void BM_VerifyParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tg::verify_solution(hexagonal_solution(), n, 0.05));
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifySerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
