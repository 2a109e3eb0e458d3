#include <benchmark/benchmark.h>

#include "bench_helpers.hpp"
#include "fracspec/gagliardo.hpp"

using namespace fracspec;

static void bm_assemble_2d(benchmark::State& state) {
  const auto dom = benchutil::square(static_cast<int>(state.range(0)));
  const gagliardo::FractionalOrder s(0.75);
  for (auto _ : state) {
    auto form = gagliardo::assemble_2d(dom, s);
    benchmark::DoNotOptimize(form.G0);
  }
  state.SetLabel(std::to_string(dom.nx) + "x" + std::to_string(dom.ny));
}
BENCHMARK(bm_assemble_2d)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void bm_assemble_2d_window(benchmark::State& state) {
  const auto dom = benchutil::square(48);
  const gagliardo::FractionalOrder s(0.75);
  gagliardo::FormOptions opt;
  opt.window = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto form = gagliardo::assemble_2d(dom, s, opt);
    benchmark::DoNotOptimize(form.G0);
  }
}
BENCHMARK(bm_assemble_2d_window)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void bm_assemble_1d(benchmark::State& state) {
  const auto mesh = gagliardo::LineMesh::interval(0.0, 1.0, static_cast<int>(state.range(0)));
  const gagliardo::FractionalOrder s(0.75);
  for (auto _ : state) {
    auto form = gagliardo::assemble_1d(mesh, s);
    benchmark::DoNotOptimize(form.G0);
  }
}
BENCHMARK(bm_assemble_1d)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
