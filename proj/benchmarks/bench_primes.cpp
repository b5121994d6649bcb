#include <benchmark/benchmark.h>

#include "ufalab/primes.hpp"

namespace {

void BM_Sieve(benchmark::State& state) {
    const std::uint64_t limit = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto primes = ufalab::sieve(limit);
        benchmark::DoNotOptimize(primes);
    }
}
BENCHMARK(BM_Sieve)->Arg(10'000)->Arg(1'000'000);

void BM_SelectCluster(benchmark::State& state) {
    const int count = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto selection = ufalab::select_cluster(count);
        benchmark::DoNotOptimize(selection);
    }
}
BENCHMARK(BM_SelectCluster)->Arg(8)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
