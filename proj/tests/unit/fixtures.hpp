#pragma once

#include "ufalab/residue_system.hpp"
#include "ufalab/tournament.hpp"

namespace ufalab::tests {

// The canonical desk instance: directed triangle 1->2->3->1, base 2, the
// eight smallest primes above 3. Moduli: m_1 = 5*11*17*23 = 21505,
// m_2 = 5*7*17*19 = 11305, m_3 = 5*7*11*13 = 5005.
inline ModuliSystem desk_triangle() {
    return ModuliSystem(2, Tournament::from_edges(3, {{1, 2}, {2, 3}, {3, 1}}),
                        select_desk(8, 3));
}

// Two-vertex instance (1->2, base 2, primes {3,5,7,11}); small enough for
// exhaustive sweeps: m_1 = 3*7 = 21, m_2 = 3*5 = 15.
inline ModuliSystem desk_pair() {
    return ModuliSystem(2, Tournament::from_edges(2, {{1, 2}}), select_desk(4, 2));
}

inline ResidueVector constant_vector(const ModuliSystem& ms, std::uint64_t value) {
    ResidueVector rv;
    rv.residues.reserve(ms.prime_count());
    for (std::size_t j = 0; j < ms.prime_count(); ++j)
        rv.residues.push_back(value % ms.prime(j));
    return rv;
}

}  // namespace ufalab::tests
