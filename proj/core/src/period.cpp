#include "ufalab/period.hpp"

#include <random>
#include <stdexcept>

namespace ufalab {

namespace {

// Residue categories: the exact values 0..n plus one representative for
// "anything larger". Primes <= n+1 have no larger residue.
std::uint64_t category_count(const ModuliSystem& ms, std::uint32_t index) {
    const std::uint64_t p = ms.prime(index);
    const std::uint64_t n = static_cast<std::uint64_t>(ms.vertex_count());
    return p > n + 1 ? n + 2 : p;
}

std::uint64_t category_representative(std::uint64_t category) { return category; }

// Checks that membership only sees residue categories: random vectors must
// agree with their category-collapsed counterparts.
void verify_collapse(const ModuliSystem& ms, const ResidueMembership& membership,
                     std::uint64_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::uint64_t n = static_cast<std::uint64_t>(ms.vertex_count());
    ResidueVector rv, collapsed;
    rv.residues.resize(ms.prime_count());
    collapsed.residues.resize(ms.prime_count());
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (std::size_t j = 0; j < ms.prime_count(); ++j) {
            const std::uint64_t p = ms.prime(j);
            std::uint64_t r = rng() % p;
            rv.residues[j] = r;
            collapsed.residues[j] = r <= n ? r : n + 1;
        }
        if (membership(rv) != membership(collapsed))
            throw std::invalid_argument(
                "membership distinguishes residues above the vertex labels; "
                "the category-collapsed period search does not apply");
    }
}

// Membership constant in the coordinate `varying` over all category
// assignments of the support coordinates (removed coordinates stay 0)?
bool independent_of(const ModuliSystem& ms, const ResidueMembership& membership,
                    const SquarefreeDivisor& support, std::uint32_t varying) {
    std::vector<std::uint32_t> free_coords;
    for (std::uint32_t j : support.indices())
        if (j != varying) free_coords.push_back(j);

    ResidueVector rv;
    rv.residues.assign(ms.prime_count(), 0);
    std::vector<std::uint64_t> odometer(free_coords.size(), 0);
    while (true) {
        const std::uint64_t sweep = category_count(ms, varying);
        rv.residues[varying] = category_representative(0);
        const bool first = membership(rv);
        for (std::uint64_t c = 1; c < sweep; ++c) {
            rv.residues[varying] = category_representative(c);
            if (membership(rv) != first) return false;
        }
        rv.residues[varying] = 0;

        std::size_t pos = 0;
        while (pos < free_coords.size()) {
            const std::uint32_t j = free_coords[pos];
            if (++odometer[pos] < category_count(ms, j)) {
                rv.residues[j] = category_representative(odometer[pos]);
                break;
            }
            odometer[pos] = 0;
            rv.residues[j] = 0;
            ++pos;
        }
        if (pos == free_coords.size()) return true;
    }
}

}  // namespace

PeriodResult minimal_period(const ModuliSystem& ms, const ResidueMembership& membership,
                            std::uint64_t collapse_check_samples, std::uint64_t seed) {
    verify_collapse(ms, membership, collapse_check_samples, seed);

    PeriodResult result;
    result.support = SquarefreeDivisor::all(ms.prime_count());
    for (std::uint32_t j = 0; j < ms.prime_count(); ++j) {
        if (independent_of(ms, membership, result.support, j))
            result.support.reset(j);
    }
    result.period = divisor_value(ms, result.support);
    return result;
}

ResidueMembership language_membership(const ModuliSystem& ms) {
    return [&ms](const ResidueVector& rv) { return accepted_by(ms, rv).has_value(); };
}

ResidueMembership complement_membership(const ModuliSystem& ms) {
    return [&ms](const ResidueVector& rv) { return !accepted_by(ms, rv).has_value(); };
}

}  // namespace ufalab
