#include "ufalab/residue_system.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "ufalab/errors.hpp"

namespace ufalab {

SquarefreeDivisor SquarefreeDivisor::all(std::size_t universe) {
    SquarefreeDivisor d(universe);
    for (std::size_t w = 0; w < d.words_.size(); ++w) d.words_[w] = ~std::uint64_t{0};
    if (universe % 64 != 0)
        d.words_.back() &= (std::uint64_t{1} << (universe % 64)) - 1;
    return d;
}

SquarefreeDivisor SquarefreeDivisor::from_indices(std::size_t universe,
                                                  const std::vector<std::uint32_t>& indices) {
    SquarefreeDivisor d(universe);
    for (std::uint32_t i : indices) d.set(i);
    return d;
}

bool SquarefreeDivisor::test(std::uint32_t index) const {
    if (index >= size_) throw std::out_of_range("prime index out of range");
    return (words_[index / 64] >> (index % 64)) & 1u;
}

void SquarefreeDivisor::set(std::uint32_t index) {
    if (index >= size_) throw std::out_of_range("prime index out of range");
    words_[index / 64] |= std::uint64_t{1} << (index % 64);
}

void SquarefreeDivisor::reset(std::uint32_t index) {
    if (index >= size_) throw std::out_of_range("prime index out of range");
    words_[index / 64] &= ~(std::uint64_t{1} << (index % 64));
}

std::size_t SquarefreeDivisor::popcount() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::vector<std::uint32_t> SquarefreeDivisor::indices() const {
    std::vector<std::uint32_t> out;
    out.reserve(popcount());
    for (std::uint32_t i = 0; i < size_; ++i)
        if ((words_[i / 64] >> (i % 64)) & 1u) out.push_back(i);
    return out;
}

namespace {

std::uint32_t digit(std::uint64_t value, int position, int base) {
    for (int d = 0; d < position; ++d) value /= static_cast<std::uint64_t>(base);
    return static_cast<std::uint32_t>(value % static_cast<std::uint64_t>(base));
}

}  // namespace

ModuliSystem::ModuliSystem(int base, Tournament tournament, PrimeSet primes)
    : base_(base), tournament_(std::move(tournament)), primes_(std::move(primes)) {
    if (base_ < 2) throw std::invalid_argument("base must be >= 2");
    const int n = tournament_.size();

    mpz_class expected;
    mpz_ui_pow_ui(expected.get_mpz_t(), static_cast<unsigned long>(base_),
                  static_cast<unsigned long>(n));
    if (mpz_class(static_cast<unsigned long>(primes_.primes.size())) != expected)
        throw std::invalid_argument("prime count " + std::to_string(primes_.primes.size()) +
                                    " is not b^n = " + expected.get_str());
    const std::size_t count = primes_.primes.size();

    validate_prime_set(primes_);
    for (std::uint64_t p : primes_.primes)
        if (p <= static_cast<std::uint64_t>(n))
            throw std::invalid_argument("prime " + std::to_string(p) +
                                        " not greater than n = " + std::to_string(n));

    owned_.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        auto& owned = owned_[static_cast<std::size_t>(i - 1)];
        for (std::uint32_t j = 0; j < count; ++j)
            if (digit(j, i - 1, base_) == 0) owned.push_back(j);
        if (owned.size() * static_cast<std::size_t>(base_) != count)
            throw std::invalid_argument("vertex " + std::to_string(i) +
                                        " owns " + std::to_string(owned.size()) +
                                        " primes, expected N/b");
    }

    shared_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int u = 1; u <= n; ++u) {
        for (int v = 1; v <= n; ++v) {
            if (u == v) continue;
            auto& shared = shared_[static_cast<std::size_t>(u - 1) * n + (v - 1)];
            std::set_intersection(owned_[static_cast<std::size_t>(u - 1)].begin(),
                                  owned_[static_cast<std::size_t>(u - 1)].end(),
                                  owned_[static_cast<std::size_t>(v - 1)].begin(),
                                  owned_[static_cast<std::size_t>(v - 1)].end(),
                                  std::back_inserter(shared));
            if (n >= 2 &&
                shared.size() * static_cast<std::size_t>(base_) *
                        static_cast<std::size_t>(base_) != count)
                throw std::invalid_argument("vertices " + std::to_string(u) + "," +
                                            std::to_string(v) + " share " +
                                            std::to_string(shared.size()) +
                                            " primes, expected N/b^2");
        }
    }

    out_edges_.resize(static_cast<std::size_t>(n));
    for (int u = 1; u <= n; ++u)
        out_edges_[static_cast<std::size_t>(u - 1)] = tournament_.out_neighbors(u);
}

void ModuliSystem::check_vertex(int vertex) const {
    if (vertex < 1 || vertex > vertex_count())
        throw std::invalid_argument("vertex " + std::to_string(vertex) + " outside 1.." +
                                    std::to_string(vertex_count()));
}

const std::vector<std::uint32_t>& ModuliSystem::modulus_primes(int vertex) const {
    check_vertex(vertex);
    return owned_[static_cast<std::size_t>(vertex - 1)];
}

const std::vector<std::uint32_t>& ModuliSystem::shared_primes(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("shared primes need two distinct vertices");
    return shared_[static_cast<std::size_t>(u - 1) * vertex_count() + (v - 1)];
}

mpz_class ModuliSystem::modulus_value(int vertex) const {
    mpz_class product = 1;
    for (std::uint32_t j : modulus_primes(vertex))
        product *= static_cast<unsigned long>(primes_.primes[j]);
    return product;
}

mpz_class ModuliSystem::primes_product() const {
    mpz_class product = 1;
    for (std::uint64_t p : primes_.primes) product *= static_cast<unsigned long>(p);
    return product;
}

std::vector<std::uint32_t> ModuliSystem::inert_prime_indices() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t j = 0; j < prime_count(); ++j) {
        bool has_zero_digit = false;
        for (int pos = 0; pos < vertex_count(); ++pos) {
            if (digit(j, pos, base_) == 0) {
                has_zero_digit = true;
                break;
            }
        }
        if (!has_zero_digit) out.push_back(j);
    }
    return out;
}

ResidueVector residues_of(const ModuliSystem& ms, const mpz_class& t) {
    if (t < 0) throw std::invalid_argument("length must be nonnegative");
    ResidueVector rv;
    rv.residues.reserve(ms.prime_count());
    for (std::size_t j = 0; j < ms.prime_count(); ++j)
        rv.residues.push_back(
            mpz_fdiv_ui(t.get_mpz_t(), static_cast<unsigned long>(ms.prime(j))));
    return rv;
}

mpz_class crt_reconstruct(const ModuliSystem& ms, const ResidueVector& rv) {
    if (rv.residues.size() != ms.prime_count())
        throw std::invalid_argument("residue vector length mismatch");
    mpz_class x = 0;
    mpz_class modulus = 1;
    for (std::size_t j = 0; j < ms.prime_count(); ++j) {
        const unsigned long p = static_cast<unsigned long>(ms.prime(j));
        if (rv.residues[j] >= p)
            throw std::invalid_argument("residue " + std::to_string(rv.residues[j]) +
                                        " out of range for prime " + std::to_string(p));
        // Solve x + modulus * t == r_j (mod p).
        unsigned long x_mod_p = mpz_fdiv_ui(x.get_mpz_t(), p);
        unsigned long m_mod_p = mpz_fdiv_ui(modulus.get_mpz_t(), p);
        mpz_class inv;
        mpz_class m_mod_p_z(m_mod_p);
        mpz_class p_z(p);
        if (mpz_invert(inv.get_mpz_t(), m_mod_p_z.get_mpz_t(), p_z.get_mpz_t()) == 0)
            throw std::logic_error("moduli are not coprime");
        unsigned long diff = (rv.residues[j] + p - x_mod_p) % p;
        mpz_class t = (inv * static_cast<unsigned long>(diff)) % p_z;
        x += modulus * t;
        modulus *= p_z;
    }
    return x;
}

bool acceptable(const ModuliSystem& ms, const ResidueVector& rv, int vertex) {
    if (rv.residues.size() != ms.prime_count())
        throw std::invalid_argument("residue vector length mismatch");
    return ms.acceptable_under(vertex, [&](std::uint32_t j) { return rv.residues[j]; });
}

std::optional<int> accepted_by(const ModuliSystem& ms, const ResidueVector& rv) {
    std::optional<int> found;
    for (int i = 1; i <= ms.vertex_count(); ++i) {
        if (acceptable(ms, rv, i)) {
            if (found) throw AmbiguityError(*found, i);
            found = i;
        }
    }
    return found;
}

ResidueVector witness_residues(const ModuliSystem& ms, const SquarefreeDivisor& m,
                               int vertex) {
    if (m.universe() != ms.prime_count())
        throw std::invalid_argument("divisor universe mismatch");
    if (vertex < 1 || vertex > ms.vertex_count())
        throw std::invalid_argument("vertex out of range");
    ResidueVector rv;
    rv.residues.resize(ms.prime_count());
    for (std::uint32_t j = 0; j < ms.prime_count(); ++j)
        rv.residues[j] = m.test(j) ? 0 : static_cast<std::uint64_t>(vertex);
    return rv;
}

std::vector<std::pair<int, int>> controlled_edges(const ModuliSystem& ms,
                                                  const SquarefreeDivisor& m) {
    if (m.universe() != ms.prime_count())
        throw std::invalid_argument("divisor universe mismatch");
    std::vector<std::pair<int, int>> out;
    for (int u = 1; u <= ms.vertex_count(); ++u) {
        for (int v = 1; v <= ms.vertex_count(); ++v) {
            if (u == v || !ms.tournament().edge_towards(u, v)) continue;
            const auto& shared = ms.shared_primes(u, v);
            bool all_divide = true;
            for (std::uint32_t j : shared) {
                if (!m.test(j)) {
                    all_divide = false;
                    break;
                }
            }
            if (all_divide) out.emplace_back(u, v);
        }
    }
    return out;
}

bool is_blocking(const ModuliSystem& ms, const SquarefreeDivisor& m) {
    if (m.universe() != ms.prime_count())
        throw std::invalid_argument("divisor universe mismatch");
    for (int i = 1; i <= ms.vertex_count(); ++i) {
        const std::uint64_t label = static_cast<std::uint64_t>(i);
        bool ok = ms.acceptable_under(
            i, [&](std::uint32_t j) { return m.test(j) ? std::uint64_t{0} : label; });
        if (ok) return false;
    }
    return true;
}

namespace {

std::uint64_t floor_blocking_bound(const ModuliSystem& ms, int k,
                                   unsigned long denominator_base, int exponent) {
    // floor(N (1 - ((D-1)/D)^e)) = floor(N (D^e - (D-1)^e) / D^e)
    mpz_class d_pow, d1_pow;
    mpz_ui_pow_ui(d_pow.get_mpz_t(), denominator_base, static_cast<unsigned long>(exponent));
    mpz_ui_pow_ui(d1_pow.get_mpz_t(), denominator_base - 1,
                  static_cast<unsigned long>(exponent));
    mpz_class numerator =
        mpz_class(static_cast<unsigned long>(ms.prime_count())) * (d_pow - d1_pow);
    mpz_class quotient;
    mpz_fdiv_q(quotient.get_mpz_t(), numerator.get_mpz_t(), d_pow.get_mpz_t());
    if (k < 1) throw std::invalid_argument("k must be positive");
    return static_cast<std::uint64_t>(quotient.get_ui());
}

}  // namespace

std::uint64_t lemma9_bound(const ModuliSystem& ms, int k) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    const int e = (k + 1) / 2;
    const unsigned long b2 = static_cast<unsigned long>(ms.base()) *
                             static_cast<unsigned long>(ms.base());
    return floor_blocking_bound(ms, k, b2, e);
}

std::uint64_t lemma9_bound_printed_variant(const ModuliSystem& ms, int k) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    const int e = (k + 1) / 2;
    return floor_blocking_bound(ms, k, static_cast<unsigned long>(ms.base()), e);
}

mpz_class divisor_value(const ModuliSystem& ms, const SquarefreeDivisor& m) {
    if (m.universe() != ms.prime_count())
        throw std::invalid_argument("divisor universe mismatch");
    mpz_class product = 1;
    for (std::uint32_t j = 0; j < ms.prime_count(); ++j)
        if (m.test(j)) product *= static_cast<unsigned long>(ms.prime(j));
    return product;
}

std::optional<SquarefreeDivisor> divisor_from_value(const ModuliSystem& ms,
                                                    const mpz_class& t) {
    if (t <= 0) return std::nullopt;
    SquarefreeDivisor d(ms.prime_count());
    mpz_class rest = t;
    for (std::uint32_t j = 0; j < ms.prime_count(); ++j) {
        const unsigned long p = static_cast<unsigned long>(ms.prime(j));
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            d.set(j);
            if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) return std::nullopt;  // square factor
        }
    }
    if (rest != 1) return std::nullopt;  // leftover outside P
    return d;
}

}  // namespace ufalab
