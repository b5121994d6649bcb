// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Budgets are asserted, not just reported.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ufalab/json_io.hpp"
#include "ufalab/period.hpp"
#include "ufalab/primes.hpp"
#include "ufalab/residue_system.hpp"
#include "ufalab/sweeping_dfa.hpp"
#include "ufalab/tournament.hpp"
#include "ufalab/unary_nfa.hpp"
#include "ufalab/verification.hpp"

using namespace ufalab;

namespace {

struct Context {
    std::vector<std::string> failures;

    void require(bool condition, const std::string& message) {
        if (!condition) failures.push_back(message);
    }
};

ModuliSystem fixture_triangle() {
    return ModuliSystem(2, Tournament::from_edges(3, {{1, 2}, {2, 3}, {3, 1}}),
                        select_desk(8, 3));
}

// Independent exhaustive re-check, bitmask enumeration rather than the
// library's combination walk.
bool oracle_has_covering_up_to(const Tournament& t, int k) {
    const int n = t.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) > k) continue;
        std::vector<int> s;
        for (int v = 1; v <= n; ++v)
            if ((mask >> (v - 1)) & 1u) s.push_back(v);
        if (is_inbound_covering(t, s)) return true;
    }
    return false;
}

void criterion1_tournament_certificates(Context& ctx) {
    OrientationSearch small = find_orientation(1, 3, 200, 5);
    ctx.require(small.tournament.has_value(), "find_orientation(1, 3) failed");
    if (small.tournament)
        ctx.require(!oracle_has_covering_up_to(*small.tournament, 1),
                    "k=1 certificate fails the independent re-check");

    OrientationSearch seven = find_orientation(2, 7, 50'000, 6);
    ctx.require(seven.tournament.has_value(), "find_orientation(2, 7) failed");
    if (seven.tournament)
        ctx.require(!oracle_has_covering_up_to(*seven.tournament, 2),
                    "k=2 certificate fails the independent re-check");

    // Provably impossible at n = 3: every one of the eight orientations has
    // a covering set of size <= 2.
    const std::pair<int, int> base[3] = {{1, 2}, {1, 3}, {2, 3}};
    for (unsigned mask = 0; mask < 8; ++mask) {
        std::vector<std::pair<int, int>> arcs;
        for (int e = 0; e < 3; ++e) {
            auto [u, v] = base[e];
            arcs.emplace_back((mask >> e) & 1u ? std::make_pair(u, v)
                                               : std::make_pair(v, u));
        }
        ctx.require(oracle_has_covering_up_to(Tournament::from_edges(3, arcs), 2),
                    "an n=3 orientation unexpectedly avoids size-2 coverings");
    }
    OrientationSearch impossible = find_orientation(2, 3, 64, 9);
    ctx.require(!impossible.tournament.has_value(),
                "find_orientation(2, 3) unexpectedly succeeded");
}

void criterion2_prime_cluster(Context& ctx) {
    ClusterSelection selection = select_cluster(8);
    ctx.require(selection.primes.has_value(), "select_cluster(8) failed");
    if (!selection.primes) return;
    const auto& primes = selection.primes->primes;
    ctx.require(primes.size() == 8, "cluster size is not 8");
    const double lo = 3 * 64 * std::log(8.0);
    const double hi = 4 * 64 * std::log(8.0);
    for (std::uint64_t p : primes) {
        ctx.require(static_cast<double>(p) >= std::floor(lo) &&
                        static_cast<double>(p) <= hi,
                    "cluster prime outside the interval");
        ctx.require(is_prime_trial_division(p), "cluster member is composite");
    }
    ctx.require(primes.back() * 8 <= primes.front() * 9,
                "cluster ratio above 1 + 1/8");

    // The reference window [479, 523] is a valid output: exactly these
    // eight primes, ratio within bound, inside the interval.
    std::vector<std::uint64_t> reference{479, 487, 491, 499, 503, 509, 521, 523};
    auto all = sieve(static_cast<std::uint64_t>(hi));
    std::vector<std::uint64_t> window;
    for (std::uint64_t p : all)
        if (p >= 479 && static_cast<double>(p) <= 479 + 3 * 8 * std::log(8.0))
            window.push_back(p);
    ctx.require(window == reference, "the reference window census changed");
    ctx.require(reference.back() * 8 <= reference.front() * 9,
                "reference window violates the ratio bound");
}

void criterion3_lemma8_three_routes(Context& ctx) {
    ModuliSystem ms = fixture_triangle();

    // Route one: the symbolic pair check.
    Verdict pair_check = check_lemma8(ms);
    ctx.require(pair_check.pass, "symbolic pair check failed");
    ctx.require(pair_check.census.at("oriented_pairs") == 3,
                "expected three oriented pairs");

    // Route two: ambiguity decision on the explicit 37,816-state automaton.
    UnaryNFA ufa = build_ufa(ms, 100'000);
    ctx.require(ufa.state_count() == 37'816, "unexpected automaton size");
    UnambiguityResult unamb = is_unambiguous(ufa);
    ctx.require(unamb.unambiguous, "product construction found an ambiguity");

    // Route three: run counts stay below two on the window and on random
    // big lengths.
    bool counts_ok = true;
    {
        std::vector<std::uint8_t> counts(ufa.state_count(), 0), next(ufa.state_count());
        counts[ufa.initial()] = 1;
        for (std::uint64_t length = 0; length <= 10'000; ++length) {
            unsigned total = 0;
            for (std::uint32_t q : ufa.accepting_states()) {
                total += counts[q];
                if (total > 1) break;
            }
            if (total > 1) {
                counts_ok = false;
                break;
            }
            std::fill(next.begin(), next.end(), 0);
            for (std::uint32_t q = 0; q < ufa.state_count(); ++q) {
                if (!counts[q]) continue;
                for (auto it = ufa.successors_begin(q); it != ufa.successors_end(q);
                     ++it)
                    next[*it] = static_cast<std::uint8_t>(
                        std::min(2, next[*it] + counts[q]));
            }
            std::swap(counts, next);
        }
    }
    ctx.require(counts_ok, "a window length has two accepting runs");

    MatrixPowerEvaluator matrix(ufa);
    gmp_randstate_t rand_state;
    gmp_randinit_mt(rand_state);
    gmp_randseed_ui(rand_state, 303);
    mpz_class product = ms.primes_product();
    bool big_counts_ok = true;
    for (int round = 0; round < 10'000 && big_counts_ok; ++round) {
        mpz_class length;
        mpz_urandomm(length.get_mpz_t(), rand_state, product.get_mpz_t());
        big_counts_ok = matrix.count_runs(length) != RunCount::two_or_more;
    }
    gmp_randclear(rand_state);
    ctx.require(big_counts_ok, "a sampled big length has two accepting runs");

    // The all-zero class is rejected on every route.
    ResidueVector zero;
    zero.residues.assign(ms.prime_count(), 0);
    ctx.require(!accepted_by(ms, zero).has_value(), "all-zero vector accepted");
    ctx.require(!matrix.accepts(product), "length prod P accepted by the automaton");
    ctx.require(matrix.count_runs(product) == RunCount::zero,
                "length prod P has accepting runs");

    // Three independent routes, one verdict.
    ctx.require(pair_check.pass && unamb.unambiguous && counts_ok && big_counts_ok,
                "the three lemma-8 routes disagree");
}

void criterion4_lemma9_census(Context& ctx) {
    ModuliSystem ms = fixture_triangle();
    Verdict verdict = check_lemma9(ms, 1);
    ctx.require(verdict.pass, "a blocking subset beats the divisor bound");
    ctx.require(verdict.census.at("subsets_examined") == 256, "census is not exhaustive");
    ctx.require(verdict.census.at("bound") == 2, "lemma9_bound(k=1) is not 2");
    ctx.require(verdict.census.at("min_divisors_among_blocking").get<std::uint64_t>() >= 2,
                "blocking subset with fewer than two divisors");

    SquarefreeDivisor example = SquarefreeDivisor::from_indices(8, {0, 1, 2, 4});
    ctx.require(is_blocking(ms, example), "5*7*11*17 is not blocking");
    ctx.require(example.popcount() == 4, "example divisor count is not 4");
    ctx.require(is_blocking(ms, SquarefreeDivisor::all(8)), "prod P is not blocking");
    ctx.require(!is_blocking(ms, SquarefreeDivisor::none(8)), "m = 1 is blocking");
}

void criterion5_automata_equivalences(Context& ctx) {
    ModuliSystem ms = fixture_triangle();
    UnaryNFA ufa = build_ufa(ms, 100'000);
    SweepingDFA language = build_swdfa(ms, false, 100'000);
    SweepingDFA complement = build_swdfa(ms, true, 100'000);
    SweepingDFA flipped = language.with_flipped_accepting();
    SweepRunner language_runner(language);
    SweepRunner complement_runner(complement);
    SweepRunner flipped_runner(flipped);

    // Window [0, 10^4]: stepping the automaton, rolling residue counters and
    // the sweeping machines, all pointwise.
    std::vector<std::uint8_t> on(ufa.state_count(), 0), next(ufa.state_count());
    std::vector<std::uint32_t> active{ufa.initial()}, next_active;
    on[ufa.initial()] = 1;
    std::vector<std::uint64_t> rolling(ms.prime_count(), 0);
    ResidueVector rv;
    rv.residues.resize(ms.prime_count());
    bool window_ok = true;
    for (std::uint64_t length = 0; length <= 10'000 && window_ok; ++length) {
        bool by_ufa = false;
        for (std::uint32_t q : active)
            if (ufa.is_accepting(q)) {
                by_ufa = true;
                break;
            }
        rv.residues = rolling;
        bool by_residues = length == 0 ? false : accepted_by(ms, rv).has_value();
        mpz_class len(static_cast<unsigned long>(length));
        bool by_swdfa = language_runner.run(len).accepted;
        bool by_complement = complement_runner.run(len).accepted;
        bool by_flip = flipped_runner.run(len).accepted;
        window_ok = by_ufa == by_residues && by_swdfa == by_residues &&
                    by_complement == !by_residues && by_flip == !by_residues;

        next_active.clear();
        for (std::uint32_t q : active)
            for (auto it = ufa.successors_begin(q); it != ufa.successors_end(q); ++it)
                if (!next[*it]) {
                    next[*it] = 1;
                    next_active.push_back(*it);
                }
        for (std::uint32_t q : active) on[q] = 0;
        std::swap(on, next);
        std::swap(active, next_active);
        for (std::size_t j = 0; j < rolling.size(); ++j)
            rolling[j] = rolling[j] + 1 == ms.prime(j) ? 0 : rolling[j] + 1;
    }
    ctx.require(window_ok, "window disagreement between the three routes");

    // One thousand random big lengths.
    MatrixPowerEvaluator matrix(ufa);
    gmp_randstate_t rand_state;
    gmp_randinit_mt(rand_state);
    gmp_randseed_ui(rand_state, 404);
    mpz_class product = ms.primes_product();
    bool big_ok = true;
    for (int round = 0; round < 1000 && big_ok; ++round) {
        mpz_class length;
        mpz_urandomm(length.get_mpz_t(), rand_state, product.get_mpz_t());
        length += 1;
        bool by_residues = accepted_by(ms, residues_of(ms, length)).has_value();
        big_ok = matrix.accepts(length) == by_residues &&
                 language_runner.run(length).accepted == by_residues &&
                 complement_runner.run(length).accepted == !by_residues &&
                 flipped_runner.run(length).accepted == !by_residues;
    }
    gmp_randclear(rand_state);
    ctx.require(big_ok, "big-length disagreement between the three routes");

    // Fifty random small automata: per-length matrix powers against an
    // incremental stepping front over the whole window.
    std::mt19937_64 rng(505);
    bool small_ok = true;
    for (int instance = 0; instance < 50 && small_ok; ++instance) {
        const std::uint32_t states = 2 + static_cast<std::uint32_t>(rng() % 29);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> transitions;
        for (std::uint32_t q = 0; q < states; ++q) {
            const std::uint32_t degree = static_cast<std::uint32_t>(rng() % 4);
            for (std::uint32_t e = 0; e < degree; ++e)
                transitions.emplace_back(q, static_cast<std::uint32_t>(rng() % states));
        }
        std::vector<std::uint32_t> accepting;
        for (std::uint32_t q = 0; q < states; ++q)
            if (rng() % 3 == 0) accepting.push_back(q);
        UnaryNFA nfa(states, 0, std::move(accepting), std::move(transitions));
        MatrixPowerEvaluator nfa_matrix(nfa);

        std::vector<std::uint8_t> counts(states, 0), step(states);
        counts[0] = 1;
        for (std::uint64_t length = 0; length <= 10'000 && small_ok; ++length) {
            unsigned total = 0;
            for (std::uint32_t q = 0; q < states; ++q)
                if (nfa.is_accepting(q)) total = std::min(2u, total + counts[q]);
            RunCount by_stepping = total == 0   ? RunCount::zero
                                   : total == 1 ? RunCount::one
                                                : RunCount::two_or_more;
            small_ok = nfa_matrix.count_runs(mpz_class(
                           static_cast<unsigned long>(length))) == by_stepping;

            std::fill(step.begin(), step.end(), 0);
            for (std::uint32_t q = 0; q < states; ++q) {
                if (!counts[q]) continue;
                for (auto it = nfa.successors_begin(q); it != nfa.successors_end(q);
                     ++it)
                    step[*it] =
                        static_cast<std::uint8_t>(std::min(2, step[*it] + counts[q]));
            }
            std::swap(counts, step);
        }
    }
    ctx.require(small_ok, "matrix power and stepping disagree on a small automaton");
}

void criterion6_minimal_period(Context& ctx) {
    ModuliSystem ms = fixture_triangle();
    PeriodResult result = minimal_period(ms, language_membership(ms));
    auto member = language_membership(ms);

    mpz_class loose = ms.primes_product() / 29;
    ctx.require(mpz_divisible_p(loose.get_mpz_t(), result.period.get_mpz_t()),
                "period does not divide prod P / 29");
    ctx.require(result.support.test(6), "prime 23 dropped from the period");

    ResidueVector all_one;
    all_one.residues.assign(ms.prime_count(), 1);
    ResidueVector flipped = all_one;
    flipped.residues[6] = 2;
    ctx.require(member(all_one) && !member(flipped),
                "the residue flip at 23 does not change membership");

    gmp_randstate_t rand_state;
    gmp_randinit_mt(rand_state);
    gmp_randseed_ui(rand_state, 606);
    mpz_class product = ms.primes_product();
    bool invariant = true;
    for (int round = 0; round < 100'000 && invariant; ++round) {
        mpz_class t;
        mpz_urandomm(t.get_mpz_t(), rand_state, product.get_mpz_t());
        t += 1;
        invariant = member(residues_of(ms, t)) ==
                    member(residues_of(ms, t + result.period));
    }
    ctx.require(invariant, "period fails pointwise invariance");

    // No single-prime-smaller divisor passes the same sampled test.
    for (std::uint32_t index : result.support.indices()) {
        mpz_class smaller = result.period / static_cast<unsigned long>(ms.prime(index));
        bool violated = false;
        for (int round = 0; round < 100'000 && !violated; ++round) {
            mpz_class t;
            mpz_urandomm(t.get_mpz_t(), rand_state, product.get_mpz_t());
            t += 1;
            violated = member(residues_of(ms, t)) != member(residues_of(ms, t + smaller));
        }
        ctx.require(violated, "dropping prime index " + std::to_string(index) +
                                  " kept the language invariant");
    }
    gmp_randclear(rand_state);
}

void criterion7_theorem10(Context& ctx) {
    std::optional<BigFloat> previous;
    for (int d : {8, 9, 10}) {
        SizeReport report = check_theorem10(d);
        ctx.require(report.epsilon_validated,
                    "epsilon bound failed validation at d = " + std::to_string(d));
        ctx.require(report.inequality_holds,
                    "inequality fails at d = " + std::to_string(d));
        ctx.require(report.leading_ratio == mpq_class(5, 6),
                    "leading ratio is not exactly 5/6");
        if (previous)
            ctx.require(*previous < report.margin_per_prime,
                        "margin not strictly growing at d = " + std::to_string(d));
        previous = report.margin_per_prime;
        const double triple = report.lll_over_d2.to_double();
        ctx.require(triple > 5.0 && triple < 6.5,
                    "lll/d^2 outside [5.0, 6.5] at d = " + std::to_string(d));
    }
}

void criterion8_determinism(Context& ctx) {
    ModuliSystem ms = fixture_triangle();

    auto lemma8_doc = [&] { return check_lemma8(ms).to_json().dump(); };
    auto lemma9_doc = [&] { return check_lemma9(ms, 1).to_json().dump(); };
    auto theorem_doc = [] { return check_theorem10_suite({8, 9, 10}).to_json().dump(); };
    auto orient_doc = [] {
        OrientationSearch search = find_orientation(1, 3, 200, 5);
        return search.tournament ? tournament_to_json(*search.tournament).dump()
                                 : std::string{};
    };
    auto bundle_doc = [&] {
        return bundle_to_json(InstanceBundle{ms, {1, 5}}).dump();
    };

    ctx.require(lemma8_doc() == lemma8_doc(), "lemma8 verdict not byte-identical");
    ctx.require(lemma9_doc() == lemma9_doc(), "lemma9 verdict not byte-identical");
    ctx.require(theorem_doc() == theorem_doc(), "theorem10 report not byte-identical");
    ctx.require(orient_doc() == orient_doc(), "orientation document not byte-identical");
    ctx.require(bundle_doc() == bundle_doc(), "bundle document not byte-identical");
}

struct Criterion {
    int number;
    std::string title;
    double budget_seconds;  // 0 means no stated budget
    std::function<void(Context&)> run;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "tournament certificates (k=1 n=3, k=2 n=7, k=2 n=3 impossible)", 5.0,
         criterion1_tournament_certificates},
        {2, "prime cluster at N=8 within the interval and ratio bound", 1.0,
         criterion2_prime_cluster},
        {3, "lemma 8 by three independent routes on the 37,816-state instance", 60.0,
         criterion3_lemma8_three_routes},
        {4, "lemma 9 exhaustive census over all 256 squarefree divisors", 10.0,
         criterion4_lemma9_census},
        {5, "automata, residue predicate and sweeping machines agree", 0.0,
         criterion5_automata_equivalences},
        {6, "minimal period divides prod P/29 and keeps 23 essential", 30.0,
         criterion6_minimal_period},
        {7, "theorem 10 log-space inequality for d in {8, 9, 10}", 5.0,
         criterion7_theorem10},
        {8, "verdict documents are byte-identical across reruns", 0.0,
         criterion8_determinism},
    };

    int failures = 0;
    for (auto& criterion : criteria) {
        Context ctx;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(ctx);
        } catch (const std::exception& error) {
            ctx.failures.push_back(std::string("exception: ") + error.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        bool timed_out = criterion.budget_seconds > 0 &&
                         elapsed > criterion.budget_seconds;
        bool pass = ctx.failures.empty() && !timed_out;

        std::ostringstream line;
        line << (pass ? "PASS" : "FAIL") << " criterion " << criterion.number << ": "
             << criterion.title << " (" << std::fixed << std::setprecision(2) << elapsed
             << " s";
        if (criterion.budget_seconds > 0)
            line << " / budget " << criterion.budget_seconds << " s";
        line << ")";
        std::cout << line.str() << "\n";
        for (const std::string& failure : ctx.failures)
            std::cout << "    - " << failure << "\n";
        if (timed_out) std::cout << "    - exceeded the runtime budget\n";
        if (!pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
