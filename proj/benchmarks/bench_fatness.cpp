#include <benchmark/benchmark.h>

#include <cmath>

#include "bench_helpers.hpp"
#include "fracspec/fatness.hpp"

using namespace fracspec;

static void bm_fatness_certificate(benchmark::State& state) {
  // annulus: order 2, nontrivial witness structure
  geometry::RasterDomain dom;
  const double h = 1.0 / state.range(0);
  const double R = 1.2;
  const int half = static_cast<int>(std::ceil(R / h)) + 2;
  dom.h = h;
  dom.nx = dom.ny = 2 * half + 1;
  dom.origin = {-half * h, -half * h};
  dom.mask.assign(static_cast<std::size_t>(dom.nx) * dom.ny, 0);
  for (int j = 1; j + 1 < dom.ny; ++j)
    for (int i = 1; i + 1 < dom.nx; ++i) {
      const double r = norm(dom.node(i, j));
      if (r > 0.4 && r < 1.0) dom.mask[dom.index(i, j)] = 1;
    }
  for (auto _ : state)
    benchmark::DoNotOptimize(fatness::fatness_certificate(dom, {0, 0}).max_projection());
}
BENCHMARK(bm_fatness_certificate)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void bm_distance_transform(benchmark::State& state) {
  const auto dom = benchutil::square(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(geometry::distance_to_complement(dom).front());
}
BENCHMARK(bm_distance_transform)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
