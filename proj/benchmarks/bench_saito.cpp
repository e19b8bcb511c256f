#include "bench_common.hpp"

#include "freearr/als.hpp"
#include "freearr/search.hpp"

#include <benchmark/benchmark.h>

using namespace freearr;

namespace {

ALSConfig single_thread() {
    ALSConfig c;
    c.threads = 1;
    return c;
}

void BM_SaitoFixture(benchmark::State& state) {
    const auto A = bench_fixture(kBenchFixtures[state.range(0)]);
    state.SetLabel(kBenchFixtures[state.range(0)]);
    const ALSConfig config = single_thread();
    for (auto _ : state) benchmark::DoNotOptimize(saito_functional(A, config).loss());
}
BENCHMARK(BM_SaitoFixture)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_SaitoTwoPencil(benchmark::State& state) {
    const int d1 = static_cast<int>(state.range(0)), d2 = static_cast<int>(state.range(1));
    const auto A = supersolvable_two_pencil(d1, d2);
    const ALSConfig config = single_thread();
    for (auto _ : state) benchmark::DoNotOptimize(saito_functional(A, d1, d2, config).loss());
}
// 15 lines, every split of d1 + d2 = 14.
BENCHMARK(BM_SaitoTwoPencil)->ArgsProduct({{1, 3, 5, 7}, {13}})->Args({3, 11})->Args({5, 9})->Args({7, 7})
    ->Unit(benchmark::kMillisecond);

void BM_SaitoSvdKernel(benchmark::State& state) {
    const auto A = bench_fixture(kBenchFixtures[state.range(0)]);
    state.SetLabel(kBenchFixtures[state.range(0)]);
    ALSConfig config = single_thread();
    config.kernel = KernelMethod::svd;
    for (auto _ : state) benchmark::DoNotOptimize(saito_functional(A, config).loss());
}
BENCHMARK(BM_SaitoSvdKernel)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
