#include "bench_common.hpp"

#include "freearr/search.hpp"
#include "freearr/verify.hpp"

#include <benchmark/benchmark.h>

using namespace freearr;

namespace {

void BM_IntersectionSummary(benchmark::State& state) {
    const auto A = bench_fixture(kBenchFixtures[state.range(0)]);
    state.SetLabel(kBenchFixtures[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(intersection_summary(A.lines()).b2);
}
BENCHMARK(BM_IntersectionSummary)->DenseRange(0, 4);

void BM_PoolSummary(benchmark::State& state) {
    // Every pool line of bounded height: a dense worst case for point merging.
    const auto lines = candidate_pool(static_cast<int>(state.range(0))).lines;
    state.SetLabel(std::to_string(lines.size()) + " lines");
    for (auto _ : state) benchmark::DoNotOptimize(intersection_summary(lines).b2);
}
BENCHMARK(BM_PoolSummary)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_VerifyFixture(benchmark::State& state) {
    const auto A = bench_fixture(kBenchFixtures[state.range(0)]);
    state.SetLabel(kBenchFixtures[state.range(0)]);
    VerifyOptions options;
    options.threads = 1;
    options.als.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(verify_free(A, options).certified());
}
BENCHMARK(BM_VerifyFixture)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
