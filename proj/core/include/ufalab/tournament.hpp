#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ufalab {

/// Orientation of the complete graph on vertices 1..n. For every unordered
/// pair {u,v} exactly one of R(u,v), R(v,u) holds, where R(u,v) means the
/// edge is oriented towards v.
class Tournament {
public:
    /// Orientation of every edge by an independent fair coin from a seeded
    /// mt19937_64. Same (n, seed) always produces the same tournament.
    static Tournament random(int n, std::uint64_t seed);

    /// Builds from an explicit arc list; every unordered pair must appear
    /// exactly once, self-loops and duplicates are rejected.
    static Tournament from_edges(int n, const std::vector<std::pair<int, int>>& arcs);

    int size() const { return n_; }

    /// R(u, v): edge between u and v oriented towards v. u == v is invalid.
    bool edge_towards(int u, int v) const;

    /// All arcs as (source, target), sorted lexicographically.
    std::vector<std::pair<int, int>> edges() const;

    std::vector<int> out_neighbors(int u) const;

    bool operator==(const Tournament& other) const = default;

private:
    Tournament(int n, std::vector<std::uint8_t> towards_high)
        : n_(n), towards_high_(std::move(towards_high)) {}

    void check_vertex(int v) const;
    std::size_t pair_index(int u, int v) const;  // requires u < v

    int n_ = 0;
    // towards_high_[pair_index(u,v)] is 1 iff R(u,v) for u < v.
    std::vector<std::uint8_t> towards_high_;
};

/// True iff every vertex outside s has at least one edge into s.
/// The empty set is never inbound-covering (for n >= 1); the full vertex
/// set always is.
bool is_inbound_covering(const Tournament& t, const std::vector<int>& s);

/// Exhaustively tests all vertex subsets of size 1..limit in increasing
/// size, lexicographic within a size. Returns the first size admitting an
/// inbound-covering set, or nullopt if none has size <= limit.
std::optional<int> smallest_inbound_covering_size(const Tournament& t, int limit);

struct OrientationSearch {
    std::optional<Tournament> tournament;  // set on success
    int n = 0;                             // vertex count used
    std::uint64_t tries = 0;               // orientations drawn
    // Largest "smallest covering size" seen among failed draws; a draw
    // fails because some covering of size <= k exists, and the near-miss
    // quality is how large that smallest covering was.
    std::optional<int> best_near_miss;
};

/// Draws random orientations until one has no inbound-covering set of size
/// <= k (verified exhaustively, so a returned tournament is a certificate).
/// When n is omitted it defaults to lemma6_bound(k).
OrientationSearch find_orientation(int k, std::optional<int> n,
                                   std::uint64_t max_tries, std::uint64_t seed);

/// 3 k^2 2^k, the vertex count at which a random orientation works with
/// positive probability for threshold k. Exact at any k.
mpz_class lemma6_bound(int k);

/// Natural log of the union bound on the existence of an inbound-covering
/// set of size <= k in a random n-vertex orientation:
///   -(n - k)/2^k + k ln n.
/// Negative certifies the positive-probability construction.
double union_bound_log_probability(const mpz_class& n, int k);

/// ln of a positive big integer, via mantissa/exponent split.
double log_mpz(const mpz_class& x);

/// GraphViz digraph of the orientation.
std::string tournament_to_dot(const Tournament& t);

}  // namespace ufalab
