#include <doctest.h>

#include <vector>

#include "fixtures.hpp"
#include "ufalab/unary_nfa.hpp"
#include "ufalab/verification.hpp"

using namespace ufalab;
using ufalab::tests::desk_triangle;

namespace {

SquarefreeDivisor divisor_of(const ModuliSystem& ms,
                             const std::vector<std::uint32_t>& indices) {
    return SquarefreeDivisor::from_indices(ms.prime_count(), indices);
}

ModuliSystem seven_vertex_instance() {
    OrientationSearch search = find_orientation(2, 7, 50'000, 6);
    REQUIRE(search.tournament.has_value());
    return ModuliSystem(2, *search.tournament, select_desk(128, 7));
}

}  // namespace

TEST_SUITE_BEGIN("verification");

TEST_CASE("lemma 8 pair check on the triangle") {
    ModuliSystem ms = desk_triangle();
    Verdict verdict = check_lemma8(ms);
    CHECK(verdict.pass);
    CHECK(verdict.census.at("oriented_pairs") == 3);
    // 3^6 assignments per oriented pair, six relevant primes each
    CHECK(verdict.census.at("assignments_enumerated") == 3 * 729);
    CHECK(verdict.census.at("pairs_by_propagation") == 0);
    CHECK(verdict.census.at("random_samples") == 10'000);
    CHECK(verdict.witness.is_null());
}

TEST_CASE("lemma 8 at N = 128 goes through propagation") {
    ModuliSystem ms = seven_vertex_instance();
    Verdict verdict = check_lemma8(ms);
    CHECK(verdict.pass);
    CHECK(verdict.census.at("oriented_pairs") == 21);
    CHECK(verdict.census.at("pairs_by_propagation") == 21);
    CHECK(verdict.census.at("assignments_enumerated") == 0);
}

TEST_CASE("lemma 9 census on the triangle") {
    ModuliSystem ms = desk_triangle();
    Verdict verdict = check_lemma9(ms, 1);
    CHECK(verdict.pass);
    CHECK(verdict.census.at("mode") == "exhaustive");
    CHECK(verdict.census.at("subsets_examined") == 256);
    CHECK(verdict.census.at("bound") == 2);
    CHECK(verdict.census.at("min_divisors_among_blocking").get<std::uint64_t>() >= 2);
    CHECK(verdict.census.at("inert_prime_indices") == VerdictPayload::array({7}));
    CHECK(verdict.census.at("blocking").get<std::uint64_t>() >= 2);
    CHECK(verdict.census.at("extractions_verified") ==
          verdict.census.at("blocking"));
}

TEST_CASE("lemma 9 refuses an uncertified tournament") {
    ModuliSystem ms = desk_triangle();
    // The triangle has covering sets of size two, so k = 2 is not certified.
    CHECK_THROWS_AS(check_lemma9(ms, 2), std::invalid_argument);
}

TEST_CASE("edge extraction follows the greedy argument") {
    ModuliSystem ms = desk_triangle();
    auto edges = check_independent_edge_extraction(ms, divisor_of(ms, {0, 1, 2, 4}), 1);
    REQUIRE(edges.size() == 1);
    CHECK(ms.tournament().edge_towards(edges[0].first, edges[0].second));

    CHECK(check_independent_edge_extraction(ms, divisor_of(ms, {0, 1, 2, 4}), 0).empty());
}

TEST_CASE("edge extraction finds two disjoint edges on a constructed instance") {
    // 1->2 and 3->4 carry the controlled primes; vertex 3 is dominated by
    // {1, 2}, so the greedy must pick (1,2) first and (3,4) second.
    std::vector<std::pair<int, int>> arcs{{1, 2}, {1, 3}, {2, 3}, {3, 4}};
    for (int u = 1; u <= 7; ++u)
        for (int v = u + 1; v <= 7; ++v) {
            bool fixed = (u == 1 && v == 2) || (u == 1 && v == 3) ||
                         (u == 2 && v == 3) || (u == 3 && v == 4);
            if (!fixed) arcs.emplace_back(u, v);
        }
    ModuliSystem ms(2, Tournament::from_edges(7, arcs), select_desk(128, 7));

    SquarefreeDivisor m(ms.prime_count());
    for (std::uint32_t j : ms.shared_primes(1, 2)) m.set(j);
    for (std::uint32_t j : ms.shared_primes(3, 4)) m.set(j);

    // ceil(k/2) edges: one at k = 2, both at k = 4.
    auto single = check_independent_edge_extraction(ms, m, 2);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == std::make_pair(1, 2));

    auto edges = check_independent_edge_extraction(ms, m, 4);
    REQUIRE(edges.size() == 2);
    CHECK(edges[0] == std::make_pair(1, 2));
    CHECK(edges[1] == std::make_pair(3, 4));
}

TEST_CASE("cycle argument classification") {
    ModuliSystem ms = desk_triangle();

    Verdict refuted = check_cycle_argument(ms, divisor_of(ms, {0, 4}), 1);
    CHECK(refuted.pass);
    CHECK(refuted.census.at("classification") == "non-blocking");
    CHECK(refuted.witness.at("accepting_vertex") == 2);
    mpz_class multiple(refuted.witness.at("accepted_multiple").get<std::string>());
    CHECK(mpz_divisible_ui_p(multiple.get_mpz_t(), 85));
    CHECK(accepted_by(ms, residues_of(ms, multiple)) == 2);
    // the certificate is also accepted by the explicit automaton
    UnaryNFA ufa = build_ufa(ms, 100'000);
    CHECK(accepts(ufa, multiple));

    Verdict blocking = check_cycle_argument(ms, divisor_of(ms, {0, 1, 2, 4}), 1);
    CHECK(blocking.pass);
    CHECK(blocking.census.at("classification") == "blocking");
    CHECK(blocking.census.at("divisors") == 4);
    CHECK(blocking.census.at("bound") == 2);

    Verdict everything = check_cycle_argument(ms, SquarefreeDivisor::all(8), 1);
    CHECK(everything.pass);
    CHECK(everything.census.at("divisors") == 8);
}

TEST_CASE("theorem 10 size accounting at d = 8") {
    SizeReport report = check_theorem10(8);
    CHECK(report.b == 16);
    CHECK(report.k == 512);
    mpz_class expected;
    mpz_ui_pow_ui(expected.get_mpz_t(), 2, 512);
    expected *= 3 * 512 * 512;
    CHECK(report.n == expected);
    CHECK(report.epsilon_validated);
    CHECK(report.inequality_holds);
    CHECK_FALSE(report.inequality_holds_exponent_b);
    CHECK(report.leading_ratio == mpq_class(5, 6));
    CHECK(report.lll_over_d2.to_double() > 5.0);
    CHECK(report.lll_over_d2.to_double() < 6.5);
}

TEST_CASE("margins grow with d and the trivial readings hold") {
    BigFloat previous;
    bool have_previous = false;
    for (int d : {8, 9, 10}) {
        SizeReport report = check_theorem10(d);
        CHECK(report.inequality_holds);
        CHECK(report.leading_ratio == mpq_class(5, 6));
        if (have_previous) CHECK(previous < report.margin_per_prime);
        previous = report.margin_per_prime;
        have_previous = true;
    }
    for (int d = 1; d <= 12; ++d)
        CHECK(check_theorem10(d).leading_ratio == mpq_class(5, 6));
}

TEST_CASE("theorem 10 suite verdict") {
    Verdict verdict = check_theorem10_suite({8, 9, 10});
    CHECK(verdict.pass);
    CHECK(verdict.census.at("reports").size() == 3);
    CHECK_FALSE(verdict.census.at("holds_from_d").is_null());
}

TEST_CASE("verdicts serialize deterministically") {
    ModuliSystem ms = desk_triangle();
    std::string first = check_lemma8(ms).to_json().dump();
    std::string second = check_lemma8(ms).to_json().dump();
    CHECK(first == second);

    std::string theorem_first = check_theorem10_suite({8, 9}).to_json().dump();
    std::string theorem_second = check_theorem10_suite({8, 9}).to_json().dump();
    CHECK(theorem_first == theorem_second);
}

TEST_SUITE_END();
