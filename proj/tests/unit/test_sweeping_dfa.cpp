#include <doctest.h>

#include <optional>
#include <random>

#include "fixtures.hpp"
#include "ufalab/errors.hpp"
#include "ufalab/sweeping_dfa.hpp"
#include "ufalab/unary_nfa.hpp"

using namespace ufalab;
using ufalab::tests::desk_pair;
using ufalab::tests::desk_triangle;

namespace {

using Delta = std::vector<std::array<std::optional<SweepingDFA::Transition>, 3>>;

void set(Delta& delta, std::uint32_t q, TapeSymbol s, std::uint32_t target, int move) {
    delta[q][static_cast<std::size_t>(s)] = SweepingDFA::Transition{target, move};
}

}  // namespace

TEST_SUITE_BEGIN("sweeping_dfa");

TEST_CASE("pass-and-return machine for the triangle") {
    ModuliSystem ms = desk_triangle();
    SweepingDFA language = build_swdfa(ms, false, 100'000);
    CHECK(language.state_count() == 37'815 + 3 + 1);  // sum m_i + n + 1
    CHECK(language.halting_transitions().size() > 0);

    SweepResult one = run_swdfa(language, 1);
    CHECK(one.halted);
    CHECK(one.accepted);
    REQUIRE(one.pass_residues.size() == 1);  // halted at the end of pass 1
    CHECK(one.pass_residues[0] == 1);

    SweepingDFA complement = build_swdfa(ms, true, 100'000);
    SweepResult comp_one = run_swdfa(complement, 1);
    CHECK(comp_one.halted);
    CHECK_FALSE(comp_one.accepted);

    SweepResult comp_product = run_swdfa(complement, ms.primes_product());
    CHECK(comp_product.halted);
    CHECK(comp_product.accepted);
    REQUIRE(comp_product.pass_residues.size() == 3);  // all passes rejected
    for (const auto& residue : comp_product.pass_residues) CHECK(residue == 0);

    SweepResult zero_lang = run_swdfa(language, 0);
    CHECK_FALSE(zero_lang.accepted);
    SweepResult zero_comp = run_swdfa(complement, 0);
    CHECK(zero_comp.accepted);
}

TEST_CASE("direct and sweep evaluators agree on the pair instance") {
    ModuliSystem ms = desk_pair();
    SweepingDFA language = build_swdfa(ms, false, 1000);
    SweepingDFA complement = build_swdfa(ms, true, 1000);
    SweepRunner language_runner(language);
    SweepRunner complement_runner(complement);
    for (std::uint64_t length = 0; length <= 10'000; ++length) {
        SweepResult direct = run_swdfa_direct(language, length);
        SweepResult swept = language_runner.run(length);
        CHECK(direct.accepted == swept.accepted);
        CHECK(direct.halted == swept.halted);
        CHECK(direct.pass_residues == swept.pass_residues);
        CHECK(complement_runner.run(length).accepted == !swept.accepted);
    }
}

TEST_CASE("direct and sweep evaluators agree on the triangle") {
    ModuliSystem ms = desk_triangle();
    SweepingDFA language = build_swdfa(ms, false, 100'000);
    SweepRunner runner(language);
    std::mt19937_64 rng(5);
    for (int round = 0; round < 60; ++round) {
        std::uint64_t length = round < 30 ? static_cast<std::uint64_t>(round)
                                          : rng() % 40'000;
        SweepResult direct = run_swdfa_direct(language, length);
        SweepResult swept = runner.run(length);
        CHECK(direct.accepted == swept.accepted);
        CHECK(direct.pass_residues == swept.pass_residues);
    }
}

TEST_CASE("machine agrees with the explicit one-way automaton") {
    ModuliSystem ms = desk_pair();
    UnaryNFA ufa = build_ufa(ms, 1000);
    SweepingDFA language = build_swdfa(ms, false, 1000);
    SweepRunner runner(language);
    for (std::uint64_t length = 0; length <= 2 * 1155; ++length)
        CHECK(runner.run(length).accepted == step_accepts(ufa, length));
}

TEST_CASE("flip behaves like the complement construction") {
    ModuliSystem ms = desk_triangle();
    SweepingDFA language = build_swdfa(ms, false, 100'000);
    SweepingDFA complement = build_swdfa(ms, true, 100'000);
    SweepingDFA flipped = language.with_flipped_accepting();
    SweepRunner complement_runner(complement);
    SweepRunner flipped_runner(flipped);
    SweepRunner language_runner(language);

    gmp_randstate_t rand_state;
    gmp_randinit_mt(rand_state);
    gmp_randseed_ui(rand_state, 21);
    mpz_class product = ms.primes_product();
    for (int round = 0; round < 200; ++round) {
        mpz_class length;
        mpz_urandomm(length.get_mpz_t(), rand_state, product.get_mpz_t());
        const bool in_language = language_runner.run(length).accepted;
        CHECK(complement_runner.run(length).accepted == !in_language);
        CHECK(flipped_runner.run(length).accepted == !in_language);
    }
    gmp_randclear(rand_state);

    SweepingDFA twice = flipped.with_flipped_accepting();
    for (std::uint64_t length = 0; length < 50; ++length)
        CHECK(run_swdfa(twice, length).accepted ==
              language_runner.run(mpz_class(static_cast<unsigned long>(length))).accepted);
}

TEST_CASE("single-vertex machine parity") {
    PrimeSet tiny;
    tiny.mode = PrimeMode::desk;
    tiny.primes = {2, 3};
    ModuliSystem ms(2, Tournament::from_edges(1, {}), tiny);
    SweepingDFA language = build_swdfa(ms, false, 100);
    CHECK(language.state_count() == 4);  // cycle of 2, no return states, 2 halts
    for (std::uint64_t length = 0; length <= 20; ++length) {
        CHECK(run_swdfa(language, length).accepted == (length % 2 == 1));
        CHECK(run_swdfa_direct(language, length).accepted == (length % 2 == 1));
    }
}

TEST_CASE("cap exceeded carries the required size") {
    ModuliSystem ms = desk_triangle();
    try {
        build_swdfa(ms, false, 1000);
        FAIL("expected CapExceededError");
    } catch (const CapExceededError& error) {
        CHECK(error.required() == 37'819);
    }
}

TEST_CASE("malformed machines are rejected") {
    // halting transition into a state with outgoing transitions
    {
        Delta delta(2);
        std::vector<SweepingDFA::StateInfo> info(2);
        info[0] = {1, +1, std::nullopt};
        info[1] = {1, +1, std::nullopt};
        set(delta, 0, TapeSymbol::left_marker, 0, +1);
        set(delta, 0, TapeSymbol::letter, 1, +1);
        set(delta, 1, TapeSymbol::letter, 1, +1);
        set(delta, 1, TapeSymbol::right_marker, 1, 0);  // halts into itself
        CHECK_THROWS_AS(SweepingDFA(2, 0, std::vector<std::uint8_t>{0, 1}, delta, info),
                        MalformedMachineError);
    }
    // letter transition against the declared direction
    {
        Delta delta(2);
        std::vector<SweepingDFA::StateInfo> info(2);
        info[0] = {1, -1, std::nullopt};
        info[1] = {0, 0, std::nullopt};
        set(delta, 0, TapeSymbol::letter, 0, +1);
        CHECK_THROWS_AS(SweepingDFA(2, 0, std::vector<std::uint8_t>{0, 1}, delta, info),
                        MalformedMachineError);
    }
    // halting on a letter
    {
        Delta delta(2);
        std::vector<SweepingDFA::StateInfo> info(2);
        info[0] = {1, +1, std::nullopt};
        info[1] = {0, 0, std::nullopt};
        set(delta, 0, TapeSymbol::letter, 1, 0);
        CHECK_THROWS_AS(SweepingDFA(2, 0, std::vector<std::uint8_t>{0, 1}, delta, info),
                        MalformedMachineError);
    }
    // walking past the right marker
    {
        Delta delta(2);
        std::vector<SweepingDFA::StateInfo> info(2);
        info[0] = {1, +1, std::nullopt};
        info[1] = {0, 0, std::nullopt};
        set(delta, 0, TapeSymbol::letter, 0, +1);
        set(delta, 0, TapeSymbol::right_marker, 1, +1);
        CHECK_THROWS_AS(SweepingDFA(2, 0, std::vector<std::uint8_t>{0, 1}, delta, info),
                        MalformedMachineError);
    }
}

TEST_CASE("machines without halting transitions never accept") {
    Delta delta(2);
    std::vector<SweepingDFA::StateInfo> info(2);
    info[0] = {1, +1, std::nullopt};
    info[1] = {1, -1, std::nullopt};
    set(delta, 0, TapeSymbol::left_marker, 0, +1);
    set(delta, 0, TapeSymbol::letter, 0, +1);
    set(delta, 0, TapeSymbol::right_marker, 1, -1);
    set(delta, 1, TapeSymbol::letter, 1, -1);
    set(delta, 1, TapeSymbol::left_marker, 0, +1);
    SweepingDFA machine(2, 0, std::vector<std::uint8_t>{1, 0}, delta, info);

    SweepResult swept = run_swdfa(machine, 3);
    CHECK_FALSE(swept.halted);
    CHECK_FALSE(swept.accepted);
    CHECK_FALSE(swept.note.empty());

    SweepResult direct = run_swdfa_direct(machine, 3);
    CHECK_FALSE(direct.halted);
    CHECK_FALSE(direct.accepted);
}

TEST_SUITE_END();
