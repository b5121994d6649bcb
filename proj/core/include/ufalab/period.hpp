#pragma once

#include <cstdint>
#include <functional>

#include <gmpxx.h>

#include "ufalab/residue_system.hpp"

namespace ufalab {

/// Membership predicate over residue vectors. To keep the period search
/// exhaustive yet tractable it must inspect each residue only through
/// comparisons with values <= n (vertex labels and zero), so that residues
/// above n are interchangeable. The acceptance predicates and any boolean
/// combination of them have this shape by construction; minimal_period
/// verifies it on random samples and throws if the collapse is violated.
using ResidueMembership = std::function<bool(const ResidueVector&)>;

struct PeriodResult {
    int preperiod = 1;  // length 0 is special-cased; 1 is always a valid start
    SquarefreeDivisor support;  // primes the language actually depends on
    mpz_class period;           // product of the support
};

/// Minimal squarefree divisor d of prod P with membership invariant under
/// t -> t + d for t >= 1, found by greedily dropping one prime at a time
/// (invariance under d1 and d2 implies invariance under gcd, so greedy
/// removal reaches the unique minimum). Each removal test exhausts the
/// collapsed residue space {0..n, large} over the surviving primes.
PeriodResult minimal_period(const ModuliSystem& ms, const ResidueMembership& membership,
                            std::uint64_t collapse_check_samples = 2000,
                            std::uint64_t seed = 0x9e3779b97f4a7c15ull);

/// Membership in L(A): some vertex accepts the residue vector.
ResidueMembership language_membership(const ModuliSystem& ms);

/// Membership in the complement of L(A) (over lengths >= 1).
ResidueMembership complement_membership(const ModuliSystem& ms);

}  // namespace ufalab
