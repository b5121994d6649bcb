#include <benchmark/benchmark.h>

#include "ufalab/residue_system.hpp"
#include "ufalab/tournament.hpp"

namespace {

ufalab::ModuliSystem triangle() {
    return ufalab::ModuliSystem(
        2, ufalab::Tournament::from_edges(3, {{1, 2}, {2, 3}, {3, 1}}),
        ufalab::select_desk(8, 3));
}

void BM_AcceptedBy(benchmark::State& state) {
    ufalab::ModuliSystem ms = triangle();
    ufalab::ResidueVector rv = ufalab::residues_of(ms, 123456789);
    for (auto _ : state) {
        auto vertex = ufalab::accepted_by(ms, rv);
        benchmark::DoNotOptimize(vertex);
    }
}
BENCHMARK(BM_AcceptedBy);

void BM_ResiduesOf(benchmark::State& state) {
    ufalab::ModuliSystem ms = triangle();
    mpz_class t = ms.primes_product() - 12345;
    for (auto _ : state) {
        auto rv = ufalab::residues_of(ms, t);
        benchmark::DoNotOptimize(rv);
    }
}
BENCHMARK(BM_ResiduesOf);

void BM_CrtReconstruct(benchmark::State& state) {
    ufalab::ModuliSystem ms = triangle();
    ufalab::ResidueVector rv = ufalab::residues_of(ms, 987654321);
    for (auto _ : state) {
        mpz_class t = ufalab::crt_reconstruct(ms, rv);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_CrtReconstruct);

void BM_BlockingCensus(benchmark::State& state) {
    ufalab::ModuliSystem ms = triangle();
    for (auto _ : state) {
        std::size_t blocking = 0;
        for (std::uint64_t mask = 0; mask < 256; ++mask) {
            ufalab::SquarefreeDivisor m(8);
            for (std::uint32_t j = 0; j < 8; ++j)
                if ((mask >> j) & 1u) m.set(j);
            if (ufalab::is_blocking(ms, m)) ++blocking;
        }
        benchmark::DoNotOptimize(blocking);
    }
}
BENCHMARK(BM_BlockingCensus);

}  // namespace
