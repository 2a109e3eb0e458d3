#include <benchmark/benchmark.h>

#include <random>

#include "bench_helpers.hpp"
#include "fracspec/gagliardo.hpp"

using namespace fracspec;

static void bm_apply(benchmark::State& state) {
  const auto dom = benchutil::square(static_cast<int>(state.range(0)));
  const auto form = gagliardo::assemble_2d(dom, gagliardo::FractionalOrder(0.75));
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> U(-1, 1);
  std::vector<double> u(form.mask.size(), 0.0);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (form.mask[i]) u[i] = U(rng);
  for (auto _ : state) {
    auto y = gagliardo::apply(form, u);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(u.size()) * u.size());
}
BENCHMARK(bm_apply)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void bm_evaluate(benchmark::State& state) {
  const auto dom = benchutil::square(48);
  const auto form = gagliardo::assemble_2d(dom, gagliardo::FractionalOrder(0.75));
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> U(-1, 1);
  std::vector<double> u(form.mask.size(), 0.0);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (form.mask[i]) u[i] = U(rng);
  for (auto _ : state) benchmark::DoNotOptimize(gagliardo::evaluate(form, u));
}
BENCHMARK(bm_evaluate)->Unit(benchmark::kMillisecond);
