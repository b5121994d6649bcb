#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "ufalab/primes.hpp"
#include "ufalab/residue_system.hpp"
#include "ufalab/sweeping_dfa.hpp"
#include "ufalab/tournament.hpp"
#include "ufalab/unary_nfa.hpp"

namespace ufalab {

using Json = nlohmann::ordered_json;

/// A moduli system plus the provenance needed to reproduce it: seeds, prime
/// mode and the certified covering threshold of the tournament. Reloading a
/// bundle reproduces byte-identical checker verdicts.
struct InstanceBundle {
    ModuliSystem system;

    struct Provenance {
        std::optional<int> certified_k;
        std::optional<std::uint64_t> seed;
    } provenance;
};

Json tournament_to_json(const Tournament& t);
Tournament tournament_from_json(const Json& j);

Json prime_set_to_json(const PrimeSet& set);
PrimeSet prime_set_from_json(const Json& j);

Json bundle_to_json(const InstanceBundle& bundle);
/// Validates every moduli-system invariant while loading; throws on any
/// violation or malformed document.
InstanceBundle bundle_from_json(const Json& j);

Json residue_vector_to_json(const ResidueVector& rv);
ResidueVector residue_vector_from_json(const Json& j);

Json nfa_to_json(const UnaryNFA& nfa);
UnaryNFA nfa_from_json(const Json& j);

Json swdfa_to_json(const SweepingDFA& machine);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace ufalab
