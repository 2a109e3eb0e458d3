#include <benchmark/benchmark.h>

#include "bench_helpers.hpp"
#include "fracspec/spectral.hpp"

using namespace fracspec;

static void bm_smallest_eigenvalue_dense(benchmark::State& state) {
  const auto dom = benchutil::square(static_cast<int>(state.range(0)));
  const auto form = gagliardo::assemble_2d(dom, gagliardo::FractionalOrder(0.75));
  for (auto _ : state)
    benchmark::DoNotOptimize(spectral::smallest_eigenvalue(form).lambda);
}
BENCHMARK(bm_smallest_eigenvalue_dense)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);

static void bm_smallest_eigenvalue_cg(benchmark::State& state) {
  const auto dom = benchutil::square(static_cast<int>(state.range(0)));
  const auto form = gagliardo::assemble_2d(dom, gagliardo::FractionalOrder(0.75));
  spectral::EigOptions opt;
  opt.dense_threshold = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(spectral::smallest_eigenvalue(form, opt).lambda);
}
BENCHMARK(bm_smallest_eigenvalue_cg)->Arg(40)->Unit(benchmark::kMillisecond);
