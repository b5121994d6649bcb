#include "ufalab/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ufalab {

Json tournament_to_json(const Tournament& t) {
    Json j;
    j["n"] = t.size();
    Json edges = Json::array();
    for (auto [u, v] : t.edges()) edges.push_back(Json::array({u, v}));
    j["edges"] = edges;
    return j;
}

Tournament tournament_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> arcs;
    for (const auto& edge : j.at("edges"))
        arcs.emplace_back(edge.at(0).get<int>(), edge.at(1).get<int>());
    return Tournament::from_edges(n, arcs);
}

Json prime_set_to_json(const PrimeSet& set) {
    Json j;
    j["mode"] = to_string(set.mode);
    j["primes"] = set.primes;
    return j;
}

PrimeSet prime_set_from_json(const Json& j) {
    PrimeSet set;
    set.mode = prime_mode_from_string(j.at("mode").get<std::string>());
    set.primes = j.at("primes").get<std::vector<std::uint64_t>>();
    return set;
}

Json bundle_to_json(const InstanceBundle& bundle) {
    Json j;
    j["b"] = bundle.system.base();
    j["n"] = bundle.system.vertex_count();
    j["primes"] = bundle.system.primes().primes;
    j["tournament"] = tournament_to_json(bundle.system.tournament());
    Json provenance;
    provenance["prime_mode"] = to_string(bundle.system.primes().mode);
    provenance["certified_k"] = bundle.provenance.certified_k
                                    ? Json(*bundle.provenance.certified_k)
                                    : Json(nullptr);
    provenance["seed"] =
        bundle.provenance.seed ? Json(*bundle.provenance.seed) : Json(nullptr);
    j["provenance"] = provenance;
    return j;
}

InstanceBundle bundle_from_json(const Json& j) {
    const int b = j.at("b").get<int>();
    Tournament t = tournament_from_json(j.at("tournament"));
    if (j.at("n").get<int>() != t.size())
        throw std::invalid_argument("bundle n disagrees with its tournament");
    PrimeSet primes;
    primes.primes = j.at("primes").get<std::vector<std::uint64_t>>();
    primes.mode = PrimeMode::desk;
    InstanceBundle::Provenance provenance;
    if (j.contains("provenance")) {
        const Json& p = j.at("provenance");
        if (p.contains("prime_mode") && !p.at("prime_mode").is_null())
            primes.mode = prime_mode_from_string(p.at("prime_mode").get<std::string>());
        if (p.contains("certified_k") && !p.at("certified_k").is_null())
            provenance.certified_k = p.at("certified_k").get<int>();
        if (p.contains("seed") && !p.at("seed").is_null())
            provenance.seed = p.at("seed").get<std::uint64_t>();
    }
    return InstanceBundle{ModuliSystem(b, std::move(t), std::move(primes)), provenance};
}

Json residue_vector_to_json(const ResidueVector& rv) { return Json(rv.residues); }

ResidueVector residue_vector_from_json(const Json& j) {
    ResidueVector rv;
    rv.residues = j.get<std::vector<std::uint64_t>>();
    return rv;
}

Json nfa_to_json(const UnaryNFA& nfa) {
    Json j;
    j["states"] = nfa.state_count();
    j["initial"] = nfa.initial();
    j["accepting"] = nfa.accepting_states();
    Json transitions = Json::array();
    for (auto [src, tgt] : nfa.transitions())
        transitions.push_back(Json::array({src, tgt}));
    j["transitions"] = transitions;
    return j;
}

UnaryNFA nfa_from_json(const Json& j) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> transitions;
    for (const auto& edge : j.at("transitions"))
        transitions.emplace_back(edge.at(0).get<std::uint32_t>(),
                                 edge.at(1).get<std::uint32_t>());
    return UnaryNFA(j.at("states").get<std::uint32_t>(),
                    j.at("initial").get<std::uint32_t>(),
                    j.at("accepting").get<std::vector<std::uint32_t>>(),
                    std::move(transitions));
}

namespace {

const char* symbol_name(TapeSymbol s) {
    switch (s) {
        case TapeSymbol::letter: return "letter";
        case TapeSymbol::left_marker: return "left_marker";
        default: return "right_marker";
    }
}

}  // namespace

Json swdfa_to_json(const SweepingDFA& machine) {
    Json j;
    j["states"] = machine.state_count();
    j["initial"] = machine.initial();
    Json accepting = Json::array();
    for (std::uint32_t q = 0; q < machine.state_count(); ++q)
        if (machine.is_accepting(q)) accepting.push_back(q);
    j["accepting"] = accepting;
    Json info = Json::array();
    for (std::uint32_t q = 0; q < machine.state_count(); ++q) {
        const auto& meta = machine.info(q);
        Json entry;
        entry["pass"] = meta.pass;
        entry["direction"] = meta.direction;
        entry["counter"] = meta.counter ? Json(*meta.counter) : Json(nullptr);
        info.push_back(entry);
    }
    j["state_info"] = info;
    Json transitions = Json::array();
    for (std::uint32_t q = 0; q < machine.state_count(); ++q) {
        for (TapeSymbol s : {TapeSymbol::letter, TapeSymbol::left_marker,
                             TapeSymbol::right_marker}) {
            const auto& t = machine.transition(q, s);
            if (!t) continue;
            transitions.push_back(Json::array({q, symbol_name(s), t->target, t->move}));
        }
    }
    j["transitions"] = transitions;
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace ufalab
