#include <benchmark/benchmark.h>

#include "ufalab/residue_system.hpp"
#include "ufalab/sweeping_dfa.hpp"
#include "ufalab/tournament.hpp"
#include "ufalab/unary_nfa.hpp"

namespace {

ufalab::ModuliSystem triangle() {
    return ufalab::ModuliSystem(
        2, ufalab::Tournament::from_edges(3, {{1, 2}, {2, 3}, {3, 1}}),
        ufalab::select_desk(8, 3));
}

void BM_BuildUfa(benchmark::State& state) {
    ufalab::ModuliSystem ms = triangle();
    for (auto _ : state) {
        ufalab::UnaryNFA ufa = ufalab::build_ufa(ms, 100'000);
        benchmark::DoNotOptimize(ufa);
    }
}
BENCHMARK(BM_BuildUfa);

void BM_MatrixPowerQuery(benchmark::State& state) {
    ufalab::ModuliSystem ms = triangle();
    ufalab::UnaryNFA ufa = ufalab::build_ufa(ms, 100'000);
    ufalab::MatrixPowerEvaluator matrix(ufa);
    mpz_class length = ms.primes_product() - 1;
    matrix.count_runs(length);  // warm the ladder
    for (auto _ : state) {
        auto count = matrix.count_runs(length);
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_MatrixPowerQuery);

void BM_SteppingWindow(benchmark::State& state) {
    ufalab::ModuliSystem ms = triangle();
    ufalab::UnaryNFA ufa = ufalab::build_ufa(ms, 100'000);
    for (auto _ : state) {
        bool last = ufalab::step_accepts(ufa, static_cast<std::uint64_t>(state.range(0)));
        benchmark::DoNotOptimize(last);
    }
}
BENCHMARK(BM_SteppingWindow)->Arg(1000)->Arg(10'000);

void BM_IsUnambiguousProduct(benchmark::State& state) {
    // The pair instance keeps the product small enough to square fairly.
    ufalab::ModuliSystem ms(2, ufalab::Tournament::from_edges(2, {{1, 2}}),
                            ufalab::select_desk(4, 2));
    ufalab::UnaryNFA ufa = ufalab::build_ufa(ms, 1000);
    for (auto _ : state) {
        auto result = ufalab::is_unambiguous(ufa);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_IsUnambiguousProduct);

void BM_SweepRunnerQuery(benchmark::State& state) {
    ufalab::ModuliSystem ms = triangle();
    ufalab::SweepingDFA machine = ufalab::build_swdfa(ms, false, 100'000);
    ufalab::SweepRunner runner(machine);
    mpz_class length = ms.primes_product() - 1;
    runner.run(length);  // warm the orbit cache
    for (auto _ : state) {
        auto result = runner.run(length);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_SweepRunnerQuery);

}  // namespace
