#include "ufalab/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ufalab/errors.hpp"
#include "ufalab/tournament.hpp"

namespace ufalab {

VerdictPayload Verdict::to_json() const {
    VerdictPayload out;
    out["check"] = check;
    out["instance"] = instance;
    out["pass"] = pass;
    out["witness"] = witness;
    out["census"] = census;
    return out;
}

namespace {

VerdictPayload instance_summary(const ModuliSystem& ms) {
    VerdictPayload out;
    out["b"] = ms.base();
    out["n"] = ms.vertex_count();
    out["N"] = ms.prime_count();
    out["prime_mode"] = to_string(ms.primes().mode);
    out["first_prime"] = ms.prime(0);
    out["last_prime"] = ms.prime(ms.prime_count() - 1);
    return out;
}

}  // namespace

Verdict check_lemma8(const ModuliSystem& ms, const Lemma8Options& options) {
    Verdict verdict;
    verdict.check = "lemma8";
    verdict.instance = instance_summary(ms);
    verdict.pass = true;
    verdict.witness = nullptr;

    const int n = ms.vertex_count();
    std::uint64_t pairs_checked = 0;
    std::uint64_t assignments_enumerated = 0;
    std::uint64_t pairs_propagated = 0;

    std::vector<std::uint64_t> buffer(ms.prime_count(), 0);
    for (int i = 1; i <= n && verdict.pass; ++i) {
        for (int j = 1; j <= n && verdict.pass; ++j) {
            if (i == j || !ms.tournament().edge_towards(i, j)) continue;
            ++pairs_checked;

            std::vector<std::uint32_t> joint;
            std::set_union(ms.modulus_primes(i).begin(), ms.modulus_primes(i).end(),
                           ms.modulus_primes(j).begin(), ms.modulus_primes(j).end(),
                           std::back_inserter(joint));

            if (joint.size() <= options.pair_enumeration_cap) {
                // Raw sweep over {0, i, j}^|union|.
                const std::uint64_t values[3] = {0, static_cast<std::uint64_t>(i),
                                                 static_cast<std::uint64_t>(j)};
                std::vector<std::uint8_t> odometer(joint.size(), 0);
                for (std::uint32_t x : joint) buffer[x] = 0;
                bool done = false;
                while (!done) {
                    ++assignments_enumerated;
                    bool acc_i = ms.acceptable_under(
                        i, [&](std::uint32_t x) { return buffer[x]; });
                    bool acc_j = ms.acceptable_under(
                        j, [&](std::uint32_t x) { return buffer[x]; });
                    if (acc_i && acc_j) {
                        verdict.pass = false;
                        VerdictPayload assignment = VerdictPayload::object();
                        for (std::size_t pos = 0; pos < joint.size(); ++pos)
                            assignment[std::to_string(ms.prime(joint[pos]))] =
                                buffer[joint[pos]];
                        verdict.witness = {{"pair", {i, j}}, {"assignment", assignment}};
                        break;
                    }
                    std::size_t pos = 0;
                    while (pos < joint.size()) {
                        if (++odometer[pos] < 3) {
                            buffer[joint[pos]] = values[odometer[pos]];
                            break;
                        }
                        odometer[pos] = 0;
                        buffer[joint[pos]] = 0;
                        ++pos;
                    }
                    done = pos == joint.size();
                }
            } else {
                // Exact domain propagation: under condition (1) for both
                // vertices every shared prime is forced to remainder 0, so
                // condition (3) for the edge source can never be witnessed.
                ++pairs_propagated;
                for (std::uint32_t x : ms.shared_primes(i, j)) {
                    const std::uint64_t label = static_cast<std::uint64_t>(i);
                    // domain at x = {0, i} ∩ {0, j}
                    bool label_allowed = (label == 0) ||
                                         (label == static_cast<std::uint64_t>(j));
                    if (label_allowed) {
                        verdict.pass = false;
                        verdict.witness = {{"pair", {i, j}},
                                           {"shared_prime", ms.prime(x)},
                                           {"reason",
                                            "edge witness value survives both domains"}};
                        break;
                    }
                }
            }
        }
    }

    // Random full vectors: accepted_by throws on double acceptance.
    std::mt19937_64 rng(options.seed);
    std::uint64_t sampled = 0;
    ResidueVector rv;
    rv.residues.resize(ms.prime_count());
    try {
        for (std::uint64_t s = 0; s < options.samples && verdict.pass; ++s) {
            for (std::size_t x = 0; x < ms.prime_count(); ++x)
                rv.residues[x] = rng() % ms.prime(x);
            accepted_by(ms, rv);
            ++sampled;
        }
    } catch (const AmbiguityError& error) {
        verdict.pass = false;
        verdict.witness = {{"sample", sampled},
                           {"vertices", {error.first_vertex(), error.second_vertex()}}};
    }

    if (verdict.pass) {
        ResidueVector zero;
        zero.residues.assign(ms.prime_count(), 0);
        if (accepted_by(ms, zero).has_value()) {
            verdict.pass = false;
            verdict.witness = {{"reason", "all-zero vector accepted"}};
        }
    }

    verdict.census = {{"oriented_pairs", pairs_checked},
                      {"assignments_enumerated", assignments_enumerated},
                      {"pairs_by_propagation", pairs_propagated},
                      {"random_samples", sampled}};
    return verdict;
}

std::vector<std::pair<int, int>> check_independent_edge_extraction(
    const ModuliSystem& ms, const SquarefreeDivisor& m, int k) {
    if (k < 0) throw std::invalid_argument("k must be nonnegative");
    const int wanted = (k + 1) / 2;
    const int n = ms.vertex_count();
    auto controlled = controlled_edges(ms, m);

    std::vector<std::pair<int, int>> picked;
    std::vector<std::uint8_t> endpoint(static_cast<std::size_t>(n) + 1, 0);
    while (static_cast<int>(picked.size()) < wanted) {
        int chosen_vertex = 0;
        for (int v = 1; v <= n && chosen_vertex == 0; ++v) {
            if (endpoint[static_cast<std::size_t>(v)]) continue;
            bool outgoing_to_endpoints = false;
            for (int u = 1; u <= n; ++u) {
                if (!endpoint[static_cast<std::size_t>(u)]) continue;
                if (ms.tournament().edge_towards(v, u)) {
                    outgoing_to_endpoints = true;
                    break;
                }
            }
            if (!outgoing_to_endpoints) chosen_vertex = v;
        }
        if (chosen_vertex == 0)
            throw std::logic_error(
                "edge extraction stuck: picked endpoints form an inbound-covering set, "
                "contradicting the certified tournament");

        std::pair<int, int> chosen_edge{0, 0};
        for (auto [u, v] : controlled) {
            if (u == chosen_vertex && !endpoint[static_cast<std::size_t>(v)]) {
                chosen_edge = {u, v};
                break;
            }
        }
        if (chosen_edge.first == 0)
            throw std::logic_error(
                "edge extraction stuck: vertex " + std::to_string(chosen_vertex) +
                " has no outgoing controlled edge, contradicting blocking-ness of m");
        picked.push_back(chosen_edge);
        endpoint[static_cast<std::size_t>(chosen_edge.first)] = 1;
        endpoint[static_cast<std::size_t>(chosen_edge.second)] = 1;
    }
    return picked;
}

Verdict check_lemma9(const ModuliSystem& ms, int k, const Lemma9Options& options) {
    Verdict verdict;
    verdict.check = "lemma9";
    verdict.instance = instance_summary(ms);
    verdict.instance["k"] = k;
    verdict.pass = true;
    verdict.witness = nullptr;

    const std::size_t count = ms.prime_count();
    const std::uint64_t bound = lemma9_bound(ms, k);

    // The precondition is a certificate; re-establish it when that is cheap.
    bool certificate_checked = false;
    if (ms.vertex_count() <= 20 && k <= ms.vertex_count()) {
        if (smallest_inbound_covering_size(ms.tournament(), k).has_value())
            throw std::invalid_argument(
                "tournament has an inbound-covering set of size <= k; "
                "lemma 9 preconditions do not hold");
        certificate_checked = true;
    }

    std::uint64_t blocking_count = 0;
    std::optional<std::uint64_t> min_divisors;
    std::uint64_t extractions_verified = 0;
    std::uint64_t subsets_examined = 0;
    std::string mode;

    auto examine = [&](const SquarefreeDivisor& m) {
        ++subsets_examined;
        if (!is_blocking(ms, m)) return;
        ++blocking_count;
        const std::uint64_t divisors = m.popcount();
        if (!min_divisors || divisors < *min_divisors) min_divisors = divisors;
        if (divisors < bound) {
            verdict.pass = false;
            VerdictPayload indices = VerdictPayload::array();
            for (std::uint32_t x : m.indices()) indices.push_back(x);
            verdict.witness = {{"blocking_subset_indices", indices},
                               {"divisors", divisors},
                               {"bound", bound}};
            return;
        }
        if (options.run_edge_extraction && k >= 1) {
            check_independent_edge_extraction(ms, m, k);
            ++extractions_verified;
        }
    };

    if (count <= options.exhaustive_max_primes) {
        mode = "exhaustive";
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << count) && verdict.pass;
             ++mask) {
            SquarefreeDivisor m(count);
            for (std::uint32_t x = 0; x < count; ++x)
                if ((mask >> x) & 1u) m.set(x);
            examine(m);
        }
    } else {
        mode = "sampled";
        std::mt19937_64 rng(options.seed);
        const auto arcs = ms.tournament().edges();
        for (std::uint64_t s = 0; s < options.samples && verdict.pass; ++s) {
            SquarefreeDivisor m(count);
            // Union of the shared primes of a random edge subset, plus salt:
            // blocking subsets live near unions of edge prime-sets.
            for (auto [u, v] : arcs)
                if (rng() & 1u)
                    for (std::uint32_t x : ms.shared_primes(u, v)) m.set(x);
            const std::uint64_t salt = rng() % (count / 4 + 1);
            for (std::uint64_t extra = 0; extra < salt; ++extra)
                m.set(static_cast<std::uint32_t>(rng() % count));
            examine(m);
        }
        // The product of all primes is always blocking; include it.
        examine(SquarefreeDivisor::all(count));
    }

    VerdictPayload inert = VerdictPayload::array();
    for (std::uint32_t x : ms.inert_prime_indices()) inert.push_back(x);

    verdict.census = {{"mode", mode},
                      {"certificate_rechecked", certificate_checked},
                      {"subsets_examined", subsets_examined},
                      {"blocking", blocking_count},
                      {"min_divisors_among_blocking",
                       min_divisors ? VerdictPayload(*min_divisors) : VerdictPayload(nullptr)},
                      {"bound", bound},
                      {"bound_printed_variant", lemma9_bound_printed_variant(ms, k)},
                      {"extractions_verified", extractions_verified},
                      {"inert_prime_indices", inert}};
    return verdict;
}

Verdict check_cycle_argument(const ModuliSystem& ms, const SquarefreeDivisor& m, int k) {
    Verdict verdict;
    verdict.check = "cycle_argument";
    verdict.instance = instance_summary(ms);
    verdict.instance["candidate"] = divisor_value(ms, m).get_str();
    verdict.pass = true;

    if (is_blocking(ms, m)) {
        const std::uint64_t divisors = m.popcount();
        const std::uint64_t bound = lemma9_bound(ms, k);
        verdict.witness = nullptr;
        verdict.census = {{"classification", "blocking"},
                          {"divisors", divisors},
                          {"bound", bound}};
        verdict.pass = divisors >= bound;
        return verdict;
    }

    // Non-blocking: produce the explicit accepted multiple.
    for (int i = 1; i <= ms.vertex_count(); ++i) {
        ResidueVector witness = witness_residues(ms, m, i);
        if (!acceptable(ms, witness, i)) continue;
        mpz_class multiple = crt_reconstruct(ms, witness);
        verdict.witness = {{"accepting_vertex", i},
                           {"accepted_multiple", multiple.get_str()}};
        verdict.census = {{"classification", "non-blocking"}};
        // The certificate must be a multiple of the candidate.
        mpz_class value = divisor_value(ms, m);
        if (value != 0 && !mpz_divisible_p(multiple.get_mpz_t(), value.get_mpz_t()))
            verdict.pass = false;
        return verdict;
    }
    throw std::logic_error("candidate classified non-blocking but no witness accepts");
}

namespace {

struct Theorem10Terms {
    BigFloat ln_n;
    BigFloat ln_b;
    BigFloat eps;          // validated bound for d (ln n + c)/N
    bool eps_validated = false;
};

Theorem10Terms theorem10_terms(int d, int b, const mpz_class& n, double c) {
    Theorem10Terms t;
    t.ln_b = log(BigFloat(static_cast<long>(b)));
    t.ln_n = log_of_mpz(n);
    // d (ln n + c) / N <= 2^-64 iff ln(d (ln n + c)) <= n ln b - 64 ln 2.
    t.eps = BigFloat::power_of_two(-64);
    BigFloat lhs = log(BigFloat(static_cast<long>(d)) * (t.ln_n + BigFloat(c)));
    BigFloat rhs = n * t.ln_b - BigFloat(64.0) * log(BigFloat(2L));
    t.eps_validated = lhs < rhs;
    return t;
}

}  // namespace

SizeReport check_theorem10(int d) {
    if (d < 1) throw std::invalid_argument("d must be positive");
    SizeReport report;
    report.d = d;
    report.b = 2 * d;
    report.k = 2L * report.b * report.b;

    // n = 3 k^2 2^k
    mpz_class n = 3 * mpz_class(report.k) * report.k;
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(report.k));
    report.n = n;

    report.o_n_constant_ln = std::log(2.0);
    Theorem10Terms terms = theorem10_terms(d, report.b, n, report.o_n_constant_ln);
    report.epsilon_per_prime = terms.eps;
    report.epsilon_validated = terms.eps_validated;

    report.ln_N = n * terms.ln_b;
    BigFloat ln_ln_N = log(report.ln_N);
    report.ln_prime_low = log(BigFloat(3L)) + BigFloat(2L) * report.ln_N + ln_ln_N;
    report.ln_prime_high = log(BigFloat(4L)) + BigFloat(2L) * report.ln_N + ln_ln_N;

    const BigFloat b_f(static_cast<long>(report.b));
    const BigFloat d_f(static_cast<long>(d));
    report.ln_ufa_size_per_prime = report.ln_prime_high / b_f;
    report.ln_swdfa_size_per_prime = report.ln_ufa_size_per_prime;
    report.ln_cycle_lower_bound_per_prime =
        BigFloat(3L) / BigFloat(5L) * report.ln_prime_low;

    // Exponent-d reading (theorem 4 form): d x per-prime UFA size.
    BigFloat lhs_d = report.epsilon_per_prime + d_f * report.ln_ufa_size_per_prime;
    report.margin_per_prime = report.ln_cycle_lower_bound_per_prime - lhs_d;
    report.inequality_holds = report.epsilon_validated &&
                              BigFloat(0L) < report.margin_per_prime;

    // Exponent-b reading as printed in the theorem statement.
    BigFloat lhs_b = report.epsilon_per_prime * b_f / d_f +
                     b_f * report.ln_ufa_size_per_prime;
    report.margin_per_prime_exponent_b =
        report.ln_cycle_lower_bound_per_prime - lhs_b;
    report.inequality_holds_exponent_b =
        report.epsilon_validated && BigFloat(0L) < report.margin_per_prime_exponent_b;

    report.leading_ratio = mpq_class(5 * d, 3 * report.b);
    report.leading_ratio.canonicalize();

    // Exact second and third logs of the automaton size through the
    // per-prime identity ln(size) = N * per_prime.
    report.ll_ufa = n * terms.ln_b + log(report.ln_ufa_size_per_prime);
    report.lll_ufa = log(report.ll_ufa);
    report.lll_over_d2 = report.lll_ufa / BigFloat(static_cast<long>(d) * d);
    return report;
}

VerdictPayload SizeReport::to_json() const {
    VerdictPayload out;
    out["d"] = d;
    out["b"] = b;
    out["k"] = k;
    out["n"] = n.get_str();
    out["N"] = {{"base", b}, {"exponent", n.get_str()}};
    out["ln_N"] = ln_N.str();
    out["ln_prime_low"] = ln_prime_low.str();
    out["ln_prime_high"] = ln_prime_high.str();
    out["o_n_constant_ln"] = o_n_constant_ln;
    out["epsilon_per_prime"] = epsilon_per_prime.str();
    out["epsilon_validated"] = epsilon_validated;
    out["ln_ufa_size_per_prime"] = ln_ufa_size_per_prime.str();
    out["ln_swdfa_size_per_prime"] = ln_swdfa_size_per_prime.str();
    out["ln_cycle_lower_bound_per_prime"] = ln_cycle_lower_bound_per_prime.str();
    out["inequality_holds"] = inequality_holds;
    out["margin_per_prime"] = margin_per_prime.str();
    out["inequality_holds_exponent_b"] = inequality_holds_exponent_b;
    out["margin_per_prime_exponent_b"] = margin_per_prime_exponent_b.str();
    out["leading_ratio"] = leading_ratio.get_str();
    out["ll_ufa"] = ll_ufa.str();
    out["lll_ufa"] = lll_ufa.str();
    out["lll_over_d2"] = lll_over_d2.str();
    return out;
}

std::optional<int> theorem10_holds_from(int max_d) {
    std::optional<int> from;
    for (int d = 1; d <= max_d; ++d) {
        if (check_theorem10(d).inequality_holds) {
            if (!from) from = d;
        } else {
            from.reset();
        }
    }
    return from;
}

Verdict check_theorem10_suite(const std::vector<int>& ds) {
    Verdict verdict;
    verdict.check = "theorem10";
    verdict.pass = true;
    verdict.witness = nullptr;
    VerdictPayload reports = VerdictPayload::array();
    VerdictPayload d_list = VerdictPayload::array();

    std::optional<BigFloat> previous_margin;
    for (int d : ds) {
        d_list.push_back(d);
        SizeReport report = check_theorem10(d);
        reports.push_back(report.to_json());
        if (!report.inequality_holds) verdict.pass = false;
        if (report.leading_ratio != mpq_class(5, 6)) verdict.pass = false;
        if (previous_margin && !(*previous_margin < report.margin_per_prime))
            verdict.pass = false;
        previous_margin = report.margin_per_prime;
    }
    verdict.instance = {{"d_values", d_list}};
    std::optional<int> from = theorem10_holds_from();
    verdict.census = {{"reports", reports},
                      {"holds_from_d",
                       from ? VerdictPayload(*from) : VerdictPayload(nullptr)}};
    return verdict;
}

}  // namespace ufalab
