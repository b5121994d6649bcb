#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ufalab/primes.hpp"
#include "ufalab/tournament.hpp"

namespace ufalab {

/// An integer represented by its remainders modulo each prime of P.
struct ResidueVector {
    std::vector<std::uint64_t> residues;

    bool operator==(const ResidueVector&) const = default;
};

/// Subset of the prime indices 0..N-1, standing for the squarefree product
/// of the selected primes.
class SquarefreeDivisor {
public:
    SquarefreeDivisor() = default;
    explicit SquarefreeDivisor(std::size_t universe)
        : size_(universe), words_((universe + 63) / 64, 0) {}

    static SquarefreeDivisor none(std::size_t universe) { return SquarefreeDivisor(universe); }
    static SquarefreeDivisor all(std::size_t universe);
    static SquarefreeDivisor from_indices(std::size_t universe,
                                          const std::vector<std::uint32_t>& indices);

    std::size_t universe() const { return size_; }
    bool test(std::uint32_t index) const;
    void set(std::uint32_t index);
    void reset(std::uint32_t index);
    std::size_t popcount() const;
    std::vector<std::uint32_t> indices() const;

    bool operator==(const SquarefreeDivisor&) const = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// The derived moduli system: base b, an n-vertex tournament, and N = b^n
/// primes. Vertex i owns the primes P_j whose (i-1)-th base-b digit of j is
/// zero; its modulus m_i is their product. Immutable once constructed; the
/// constructor re-checks every structural invariant (N = b^n exactly, all
/// primes > n, |owned(i)| = N/b, pairwise intersections N/b^2).
class ModuliSystem {
public:
    ModuliSystem(int base, Tournament tournament, PrimeSet primes);

    int base() const { return base_; }
    int vertex_count() const { return tournament_.size(); }
    std::size_t prime_count() const { return primes_.primes.size(); }
    std::uint64_t prime(std::size_t index) const { return primes_.primes[index]; }
    const PrimeSet& primes() const { return primes_; }
    const Tournament& tournament() const { return tournament_; }

    /// Prime indices owned by vertex i (1-based); sorted.
    const std::vector<std::uint32_t>& modulus_primes(int vertex) const;

    /// Prime indices owned by both endpoints; sorted. u != v.
    const std::vector<std::uint32_t>& shared_primes(int u, int v) const;

    /// m_i, the product of the owned primes. Exact.
    mpz_class modulus_value(int vertex) const;

    /// Product of all N primes.
    mpz_class primes_product() const;

    /// Indices whose base-b digits are all nonzero; such primes divide no
    /// modulus and never affect acceptance. There are (b-1)^n of them.
    std::vector<std::uint32_t> inert_prime_indices() const;

    /// Evaluates the acceptability of the residue class described by
    /// residue_at (index -> remainder mod that prime) for vertex i:
    ///  1) every owned remainder is 0 or i;
    ///  2) some owned remainder is nonzero;
    ///  3) every outgoing edge (i,v) has a shared prime with remainder i.
    template <typename ResidueAt>
    bool acceptable_under(int vertex, ResidueAt&& residue_at) const {
        const auto& owned = modulus_primes(vertex);
        const std::uint64_t label = static_cast<std::uint64_t>(vertex);
        bool nonzero = false;
        for (std::uint32_t j : owned) {
            std::uint64_t r = residue_at(j);
            if (r != 0) {
                if (r != label) return false;
                nonzero = true;
            }
        }
        if (!nonzero) return false;
        for (int v : out_edges_[static_cast<std::size_t>(vertex - 1)]) {
            bool witnessed = false;
            for (std::uint32_t j : shared_primes(vertex, v)) {
                if (residue_at(j) == label) {
                    witnessed = true;
                    break;
                }
            }
            if (!witnessed) return false;
        }
        return true;
    }

private:
    void check_vertex(int vertex) const;

    int base_;
    Tournament tournament_;
    PrimeSet primes_;
    std::vector<std::vector<std::uint32_t>> owned_;    // per vertex-1
    std::vector<std::vector<std::uint32_t>> shared_;   // (u-1)*n + (v-1)
    std::vector<std::vector<int>> out_edges_;          // per vertex-1
};

/// r_j = t mod P_j for every prime.
ResidueVector residues_of(const ModuliSystem& ms, const mpz_class& t);

/// The unique t in [0, prod P) with the given remainders.
mpz_class crt_reconstruct(const ModuliSystem& ms, const ResidueVector& rv);

/// Conditions (1)-(3) for vertex i on a full residue vector.
bool acceptable(const ModuliSystem& ms, const ResidueVector& rv, int vertex);

/// The unique accepting vertex, or nullopt. Finding two is a construction
/// integrity failure and throws AmbiguityError.
std::optional<int> accepted_by(const ModuliSystem& ms, const ResidueVector& rv);

/// Residue vector of m * L(m, i): zero exactly on the primes dividing m,
/// the vertex label i everywhere else.
ResidueVector witness_residues(const ModuliSystem& ms, const SquarefreeDivisor& m,
                               int vertex);

/// Oriented edges (i, j) whose shared primes all divide m.
std::vector<std::pair<int, int>> controlled_edges(const ModuliSystem& ms,
                                                  const SquarefreeDivisor& m);

/// True iff no multiple of m is acceptable for any vertex, decided through
/// the all-i witness vectors (complete: free residues are best set to i).
bool is_blocking(const ModuliSystem& ms, const SquarefreeDivisor& m);

/// floor(N (1 - (1 - 1/b^2)^ceil(k/2))): the minimum number of primes that
/// must divide a blocking cycle length. Exact rational arithmetic.
std::uint64_t lemma9_bound(const ModuliSystem& ms, int k);

/// The bound as printed in the lemma statement, floor(N (1 - (1-1/b)^{k/2}))
/// with the k/2 exponent rounded up; kept for the record, not used by the
/// checkers.
std::uint64_t lemma9_bound_printed_variant(const ModuliSystem& ms, int k);

/// Exact product of the selected primes.
mpz_class divisor_value(const ModuliSystem& ms, const SquarefreeDivisor& m);

/// Factorizes t over P; fails (nullopt) if t is not a squarefree product of
/// primes of P.
std::optional<SquarefreeDivisor> divisor_from_value(const ModuliSystem& ms,
                                                    const mpz_class& t);

}  // namespace ufalab
