#include "ufalab/tournament.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ufalab {

Tournament Tournament::random(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("tournament needs at least one vertex");
    std::mt19937_64 rng(seed);
    std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::vector<std::uint8_t> towards_high(pairs);
    // Pair order is (1,2),(1,3),(2,3),(1,4),... i.e. grouped by the higher
    // vertex, matching pair_index below.
    for (std::size_t i = 0; i < pairs; ++i)
        towards_high[i] = static_cast<std::uint8_t>(rng() & 1u);
    return Tournament(n, std::move(towards_high));
}

Tournament Tournament::from_edges(int n, const std::vector<std::pair<int, int>>& arcs) {
    if (n < 1) throw std::invalid_argument("tournament needs at least one vertex");
    std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (arcs.size() != pairs)
        throw std::invalid_argument("expected " + std::to_string(pairs) + " arcs, got " +
                                    std::to_string(arcs.size()));
    std::vector<std::uint8_t> towards_high(pairs);
    std::vector<std::uint8_t> seen(pairs, 0);
    Tournament t(n, {});
    t.towards_high_.assign(pairs, 0);
    for (auto [u, v] : arcs) {
        t.check_vertex(u);
        t.check_vertex(v);
        if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
        std::size_t idx = t.pair_index(std::min(u, v), std::max(u, v));
        if (seen[idx])
            throw std::invalid_argument("pair {" + std::to_string(u) + "," +
                                        std::to_string(v) + "} oriented twice");
        seen[idx] = 1;
        t.towards_high_[idx] = static_cast<std::uint8_t>(u < v ? 1 : 0);
    }
    return t;
}

void Tournament::check_vertex(int v) const {
    if (v < 1 || v > n_)
        throw std::invalid_argument("vertex " + std::to_string(v) + " outside 1.." +
                                    std::to_string(n_));
}

std::size_t Tournament::pair_index(int u, int v) const {
    // u < v; pairs grouped by the higher vertex v.
    return static_cast<std::size_t>(v - 2) * (v - 1) / 2 + (u - 1);
}

bool Tournament::edge_towards(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("relation is irreflexive");
    if (u < v) return towards_high_[pair_index(u, v)] != 0;
    return towards_high_[pair_index(v, u)] == 0;
}

std::vector<std::pair<int, int>> Tournament::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(towards_high_.size());
    for (int u = 1; u <= n_; ++u)
        for (int v = u + 1; v <= n_; ++v)
            out.push_back(towards_high_[pair_index(u, v)] ? std::make_pair(u, v)
                                                          : std::make_pair(v, u));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> Tournament::out_neighbors(int u) const {
    check_vertex(u);
    std::vector<int> out;
    for (int v = 1; v <= n_; ++v)
        if (v != u && edge_towards(u, v)) out.push_back(v);
    return out;
}

bool is_inbound_covering(const Tournament& t, const std::vector<int>& s) {
    std::vector<std::uint8_t> in_s(static_cast<std::size_t>(t.size()) + 1, 0);
    for (int v : s) {
        if (v < 1 || v > t.size())
            throw std::invalid_argument("vertex " + std::to_string(v) + " outside 1.." +
                                        std::to_string(t.size()));
        in_s[static_cast<std::size_t>(v)] = 1;
    }
    for (int v = 1; v <= t.size(); ++v) {
        if (in_s[static_cast<std::size_t>(v)]) continue;
        bool has_edge_into_s = false;
        for (int u : s) {
            if (t.edge_towards(v, u)) {
                has_edge_into_s = true;
                break;
            }
        }
        if (!has_edge_into_s) return false;
    }
    return true;
}

namespace {

// Calls fn on each size-r subset of 1..n in lexicographic order until fn
// returns true; propagates that result.
bool any_combination(int n, int r, const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> pick(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) pick[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        if (fn(pick)) return true;
        int i = r - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - (r - 1 - i)) --i;
        if (i < 0) return false;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

std::optional<int> smallest_inbound_covering_size(const Tournament& t, int limit) {
    if (limit < 1 || limit > t.size())
        throw std::invalid_argument("limit must be in 1..n");
    for (int r = 1; r <= limit; ++r) {
        if (any_combination(t.size(), r,
                            [&](const std::vector<int>& s) { return is_inbound_covering(t, s); }))
            return r;
    }
    return std::nullopt;
}

OrientationSearch find_orientation(int k, std::optional<int> n,
                                   std::uint64_t max_tries, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (max_tries < 1) throw std::invalid_argument("max_tries must be positive");
    int vertices;
    if (n) {
        vertices = *n;
    } else {
        mpz_class bound = lemma6_bound(k);
        if (!bound.fits_sint_p())
            throw std::invalid_argument("lemma6_bound(" + std::to_string(k) +
                                        ") = " + bound.get_str() +
                                        " is too large for an explicit search; pass n");
        vertices = static_cast<int>(bound.get_si());
    }
    if (k > vertices) throw std::invalid_argument("k must be <= n");

    OrientationSearch result;
    result.n = vertices;
    std::mt19937_64 seq(seed);
    for (std::uint64_t attempt = 0; attempt < max_tries; ++attempt) {
        ++result.tries;
        Tournament candidate = Tournament::random(vertices, seq());
        std::optional<int> found = smallest_inbound_covering_size(candidate, k);
        if (!found) {
            result.tournament = std::move(candidate);
            return result;
        }
        if (!result.best_near_miss || *found > *result.best_near_miss)
            result.best_near_miss = found;
    }
    return result;
}

mpz_class lemma6_bound(int k) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    mpz_class n = 3 * mpz_class(k) * k;
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    return n;
}

double log_mpz(const mpz_class& x) {
    if (x <= 0) throw std::invalid_argument("log of non-positive integer");
    signed long int exp2 = 0;
    double mantissa = mpz_get_d_2exp(&exp2, x.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exp2) * std::log(2.0);
}

double union_bound_log_probability(const mpz_class& n, int k) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (n <= k) throw std::invalid_argument("need n > k");
    mpz_class pow2k = 1;
    mpz_mul_2exp(pow2k.get_mpz_t(), pow2k.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    mpq_class head(n - k, pow2k);
    head.canonicalize();
    return -head.get_d() + static_cast<double>(k) * log_mpz(n);
}

std::string tournament_to_dot(const Tournament& t) {
    std::ostringstream out;
    out << "digraph tournament {\n";
    for (int v = 1; v <= t.size(); ++v) out << "  " << v << ";\n";
    for (auto [u, v] : t.edges()) out << "  " << u << " -> " << v << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace ufalab
