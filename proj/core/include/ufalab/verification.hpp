#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "ufalab/bigfloat.hpp"
#include "ufalab/residue_system.hpp"

namespace ufalab {

using VerdictPayload = nlohmann::ordered_json;

/// Machine-readable checker outcome.
struct Verdict {
    std::string check;
    VerdictPayload instance;
    bool pass = false;
    VerdictPayload witness;  // null unless the check failed or carries a certificate
    VerdictPayload census;   // check-specific statistics

    VerdictPayload to_json() const;
};

struct Lemma8Options {
    // Raw {0,i,j}-assignment enumeration per ordered edge runs when the
    // union of the two owned sets is at most this large (3^cap assignments);
    // above it the exact per-prime domain propagation argument replaces it.
    std::size_t pair_enumeration_cap = 16;
    std::uint64_t samples = 10'000;
    std::uint64_t seed = 1;
};

/// Uniqueness of the accepting vertex. Enumerates symbolic residue
/// assignments per oriented edge, refutes joint acceptance by the shared
/// prime domain argument, samples random full vectors through accepted_by,
/// and asserts the all-zero vector is accepted by nobody.
Verdict check_lemma8(const ModuliSystem& ms, const Lemma8Options& options = {});

struct Lemma9Options {
    std::size_t exhaustive_max_primes = 20;  // all 2^N subsets up to here
    std::uint64_t samples = 20'000;          // biased sampling beyond
    std::uint64_t seed = 2;
    bool run_edge_extraction = true;
};

/// Every blocking squarefree m must have at least lemma9_bound(ms, k) prime
/// divisors, where k is the certified covering threshold of the tournament.
/// Exhaustive census for small N, biased sampling above. On blocking
/// subsets the proof's greedy extraction of ceil(k/2) vertex-disjoint
/// controlled edges is replayed as well.
Verdict check_lemma9(const ModuliSystem& ms, int k, const Lemma9Options& options = {});

/// Greedy extraction of ceil(k/2) vertex-disjoint controlled edges from a
/// blocking m, exactly as in the lemma's proof: repeatedly take a vertex
/// with no outgoing edge to the picked endpoints (such a vertex exists while
/// the endpoints are not inbound-covering) and one of its outgoing
/// controlled edges. Getting stuck contradicts the certificate and throws
/// std::logic_error.
std::vector<std::pair<int, int>> check_independent_edge_extraction(
    const ModuliSystem& ms, const SquarefreeDivisor& m, int k);

/// Classifies a candidate cycle length: non-blocking candidates come back
/// with an explicit accepted multiple (the reconstructed witness) as a
/// refutation certificate; blocking ones with their divisor census against
/// lemma9_bound.
Verdict check_cycle_argument(const ModuliSystem& ms, const SquarefreeDivisor& m, int k);

/// Paper-scale size accounting for parameter d, entirely in natural-log
/// space. N = b^n is astronomically large, so every extensive quantity is
/// normalized per prime (divided by N); n stays an exact big integer and
/// N is carried symbolically as b^n.
struct SizeReport {
    int d = 0;
    int b = 0;       // 2d
    long k = 0;      // 2b^2
    mpz_class n;     // 3k^2 2^k
    BigFloat ln_N;   // n ln b

    BigFloat ln_prime_low;    // ln(3 N^2 ln N)
    BigFloat ln_prime_high;   // ln(4 N^2 ln N)

    double o_n_constant_ln = 0.0;  // explicit constant for the O(n) factor
    // Validated upper bound for d (ln n + c)/N, the initial-state share of
    // the normalized automaton size.
    BigFloat epsilon_per_prime;
    bool epsilon_validated = false;

    BigFloat ln_ufa_size_per_prime;          // (1/b) ln_prime_high
    BigFloat ln_swdfa_size_per_prime;        // same dominant term
    BigFloat ln_cycle_lower_bound_per_prime; // 0.6 ln_prime_low

    bool inequality_holds = false;           // exponent-d reading
    BigFloat margin_per_prime;
    bool inequality_holds_exponent_b = false;  // the statement's printed exponent
    BigFloat margin_per_prime_exponent_b;

    mpq_class leading_ratio;  // d (N/b) / (0.6 N), exactly 5/6

    BigFloat ll_ufa;       // ln ln of the automaton size: n ln b + ln(per-prime)
    BigFloat lll_ufa;      // ln ln ln of the automaton size
    BigFloat lll_over_d2;  // triple log against d^2

    VerdictPayload to_json() const;
};

SizeReport check_theorem10(int d);

/// Smallest d0 <= max_d such that the inequality margin is positive for
/// every tested d in [d0, max_d]; nullopt if even max_d fails.
std::optional<int> theorem10_holds_from(int max_d = 12);

/// Verdict wrapper over check_theorem10 for a set of d values; pass iff the
/// inequality holds for each with strictly growing margins.
Verdict check_theorem10_suite(const std::vector<int>& ds);

}  // namespace ufalab
