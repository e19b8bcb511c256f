#include "bench_common.hpp"

#include "freearr/nullspace.hpp"

#include <benchmark/benchmark.h>

using namespace freearr;

namespace {

// Matrices at the smaller candidate exponent of each large fixture.
const std::pair<const char*, int> kCases[] = {{"free_n13.json", 6}, {"free_n19.json", 7}, {"free_n20.json", 9},
                                              {"free_n20.json", 10}};

DerivationMatrix case_matrix(benchmark::State& state) {
    const auto& [file, d] = kCases[state.range(0)];
    state.SetLabel(std::string(file) + " d=" + std::to_string(d));
    return derivation_matrix(bench_fixture(file), d);
}

void BM_KernelMultimodular(benchmark::State& state) {
    const auto M = case_matrix(state);
    for (auto _ : state) benchmark::DoNotOptimize(null_space_exact(M, ExactMethod::multimodular).nullity());
}
BENCHMARK(BM_KernelMultimodular)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_KernelBareiss(benchmark::State& state) {
    const auto M = case_matrix(state);
    for (auto _ : state) benchmark::DoNotOptimize(null_space_exact(M, ExactMethod::bareiss).nullity());
}
BENCHMARK(BM_KernelBareiss)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

// Float kernel as used by the functional: SVD, or the exact kernel when the gap test fails.
void BM_KernelFloat(benchmark::State& state) {
    const auto M = case_matrix(state);
    std::string source;
    for (auto _ : state) {
        auto V = kernel_basis(M);
        source = V.source;
        benchmark::DoNotOptimize(V.nullity);
    }
    state.SetLabel(std::string(kCases[state.range(0)].first) + " d=" + std::to_string(M.degree()) + " " + source);
}
BENCHMARK(BM_KernelFloat)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
