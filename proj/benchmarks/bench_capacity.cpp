#include <benchmark/benchmark.h>

#include "bench_helpers.hpp"
#include "fracspec/capacity.hpp"

using namespace fracspec;

static void bm_capacity_qp(benchmark::State& state) {
  const auto dom = benchutil::square(static_cast<int>(state.range(0)));
  const auto form = gagliardo::assemble_2d(dom, gagliardo::FractionalOrder(0.75));
  std::vector<int> omega, sigma;
  const int ci = dom.nx / 2, cj = dom.ny / 2;
  for (int j = 0; j < dom.ny; ++j)
    for (int i = 0; i < dom.nx; ++i) {
      if (!dom.mask[dom.index(i, j)]) continue;
      omega.push_back(static_cast<int>(dom.index(i, j)));
      if (std::abs(i - ci) <= 2 && std::abs(j - cj) <= 2)
        sigma.push_back(static_cast<int>(dom.index(i, j)));
    }
  for (auto _ : state)
    benchmark::DoNotOptimize(capacity::capacity(sigma, omega, form).value);
}
BENCHMARK(bm_capacity_qp)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void bm_point_capacity_1d(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        capacity::point_capacity_1d(0.5, 0.0, 1.0, 0.75, static_cast<int>(state.range(0)))
            .value);
}
BENCHMARK(bm_point_capacity_1d)->Arg(257)->Arg(1025)->Unit(benchmark::kMillisecond);
