// Command line front door: generate tournament certificates, assemble
// instance bundles, run the verification suites, query membership and
// export explicit automata.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ufalab/errors.hpp"
#include "ufalab/json_io.hpp"
#include "ufalab/period.hpp"
#include "ufalab/primes.hpp"
#include "ufalab/residue_system.hpp"
#include "ufalab/sweeping_dfa.hpp"
#include "ufalab/tournament.hpp"
#include "ufalab/unary_nfa.hpp"
#include "ufalab/verification.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

using ufalab::Json;

void emit(const Json& document, const std::string& out_path) {
    std::string text = document.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        ufalab::write_text_file(out_path, text);
}

ufalab::InstanceBundle load_bundle(const std::string& path) {
    return ufalab::bundle_from_json(Json::parse(ufalab::read_text_file(path)));
}

int run_orient(int k, std::optional<int> n, std::uint64_t seed,
               std::uint64_t max_tries, const std::string& out_path) {
    ufalab::OrientationSearch search = ufalab::find_orientation(k, n, max_tries, seed);
    if (!search.tournament) {
        Json diagnostic;
        diagnostic["error"] = "no orientation without inbound-covering sets of size <= " +
                              std::to_string(k) + " found";
        diagnostic["n"] = search.n;
        diagnostic["tries"] = search.tries;
        diagnostic["best_near_miss_covering_size"] =
            search.best_near_miss ? Json(*search.best_near_miss) : Json(nullptr);
        std::cerr << diagnostic.dump(2) << "\n";
        return kExitCheckFailure;
    }
    Json document = ufalab::tournament_to_json(*search.tournament);
    document["certified_k"] = k;
    document["seed"] = seed;
    document["tries"] = search.tries;
    emit(document, out_path);
    return kExitPass;
}

int run_build(int b, const std::string& tournament_path, const std::string& prime_mode,
              const std::string& out_path) {
    Json tj = Json::parse(ufalab::read_text_file(tournament_path));
    ufalab::Tournament t = ufalab::tournament_from_json(tj);

    ufalab::InstanceBundle::Provenance provenance;
    if (tj.contains("certified_k") && !tj.at("certified_k").is_null())
        provenance.certified_k = tj.at("certified_k").get<int>();
    if (tj.contains("seed") && !tj.at("seed").is_null())
        provenance.seed = tj.at("seed").get<std::uint64_t>();

    mpz_class prime_count;
    mpz_ui_pow_ui(prime_count.get_mpz_t(), static_cast<unsigned long>(b),
                  static_cast<unsigned long>(t.size()));
    if (prime_count > 4'000'000) {
        std::cerr << "N = " << b << "^" << t.size() << " = " << prime_count.get_str()
                  << " primes would be needed; explicit bundles stop at 4000000\n";
        return kExitCheckFailure;
    }
    const int count = static_cast<int>(prime_count.get_ui());

    ufalab::PrimeSet primes;
    if (ufalab::prime_mode_from_string(prime_mode) == ufalab::PrimeMode::desk) {
        primes = ufalab::select_desk(count, static_cast<std::uint64_t>(t.size()));
    } else {
        ufalab::ClusterSelection selection = ufalab::select_cluster(count);
        if (!selection.primes) {
            Json diagnostic;
            diagnostic["error"] = "prime cluster not found (the interval only works "
                                  "for large enough N)";
            diagnostic["interval"] = {selection.diagnostic.interval_lo,
                                      selection.diagnostic.interval_hi};
            diagnostic["window_length"] = selection.diagnostic.window_length;
            diagnostic["best_window_lo"] = selection.diagnostic.best_window_lo;
            diagnostic["best_window_census"] = selection.diagnostic.best_window_census;
            diagnostic["needed"] = selection.diagnostic.needed;
            std::cerr << diagnostic.dump(2) << "\n";
            return kExitCheckFailure;
        }
        primes = *selection.primes;
        if (primes.primes.front() <= static_cast<std::uint64_t>(t.size())) {
            std::cerr << "cluster primes are not all greater than n = " << t.size()
                      << "\n";
            return kExitCheckFailure;
        }
    }

    ufalab::InstanceBundle bundle{
        ufalab::ModuliSystem(b, std::move(t), std::move(primes)), provenance};
    emit(ufalab::bundle_to_json(bundle), out_path);
    return kExitPass;
}

Json automata_suite(const ufalab::ModuliSystem& ms, std::uint64_t state_cap,
                    bool& pass) {
    ufalab::Verdict verdict;
    verdict.check = "automata";
    verdict.pass = true;
    verdict.witness = nullptr;

    ufalab::UnaryNFA ufa = ufalab::build_ufa(ms, state_cap);
    ufalab::SweepingDFA language_machine = ufalab::build_swdfa(ms, false, state_cap);
    ufalab::SweepingDFA complement_machine = ufalab::build_swdfa(ms, true, state_cap);

    ufalab::UnambiguityResult unamb = ufalab::is_unambiguous(ufa);
    if (!unamb.unambiguous) {
        verdict.pass = false;
        verdict.witness = {{"ambiguity_witness_length",
                            unamb.witness_length ? Json(*unamb.witness_length)
                                                 : Json(nullptr)}};
    }

    // Window plus deterministic random lengths: the explicit automaton, the
    // residue predicate and both sweeping machines must agree pointwise.
    ufalab::SweepRunner language_runner(language_machine);
    ufalab::SweepRunner complement_runner(complement_machine);
    ufalab::SweepingDFA flipped = language_machine.with_flipped_accepting();
    ufalab::SweepRunner flipped_runner(flipped);
    ufalab::MatrixPowerEvaluator ufa_matrix(ufa);

    gmp_randstate_t rand_state;
    gmp_randinit_mt(rand_state);
    gmp_randseed_ui(rand_state, 7);
    mpz_class product = ms.primes_product();

    std::uint64_t compared = 0;
    const std::uint64_t window = 2000;
    for (std::uint64_t step = 0; step <= window + 200 && verdict.pass; ++step) {
        mpz_class length;
        if (step <= window) {
            length = static_cast<unsigned long>(step);
        } else {
            mpz_urandomm(length.get_mpz_t(), rand_state, product.get_mpz_t());
        }
        ufalab::ResidueVector rv = ufalab::residues_of(ms, length);
        const bool by_residues =
            length == 0 ? false : ufalab::accepted_by(ms, rv).has_value();
        const bool by_ufa = ufa_matrix.accepts(length);
        const bool by_swdfa = language_runner.run(length).accepted;
        const bool by_complement = complement_runner.run(length).accepted;
        const bool by_flip = flipped_runner.run(length).accepted;
        if (by_ufa != by_residues || by_swdfa != by_residues ||
            by_complement != !by_residues || by_flip != !by_residues) {
            verdict.pass = false;
            verdict.witness = {{"length", length.get_str()},
                               {"ufa", by_ufa},
                               {"residues", by_residues},
                               {"swdfa", by_swdfa},
                               {"complement_swdfa", by_complement},
                               {"flipped_swdfa", by_flip}};
        }
        ++compared;
    }

    ufalab::PeriodResult period = ufalab::minimal_period(
        ms, ufalab::language_membership(ms));

    verdict.census = {{"ufa_states", ufa.state_count()},
                      {"swdfa_states", language_machine.state_count()},
                      {"unambiguous", unamb.unambiguous},
                      {"lengths_compared", compared},
                      {"minimal_period", period.period.get_str()},
                      {"minimal_period_primes", period.support.popcount()},
                      {"preperiod", period.preperiod}};
    pass = verdict.pass;
    Json out = verdict.to_json();
    out["instance"] = Json{{"b", ms.base()},
                           {"n", ms.vertex_count()},
                           {"N", ms.prime_count()}};
    return out;
}

int run_check(const std::string& bundle_path, const std::string& suite,
              std::vector<int> d_values, const std::string& out_path,
              std::uint64_t state_cap) {
    if (d_values.empty()) d_values = {8, 9, 10};

    Json document;
    document["suite"] = suite;
    document["bundle"] = bundle_path;
    Json verdicts = Json::array();
    bool all_pass = true;

    const bool needs_bundle = suite != "theorem10";
    std::optional<ufalab::InstanceBundle> bundle;
    if (needs_bundle) {
        if (bundle_path.empty()) {
            std::cerr << "--bundle is required for suite " << suite << "\n";
            return kExitUsage;
        }
        bundle = load_bundle(bundle_path);
    }

    auto add = [&](ufalab::Verdict v) {
        all_pass = all_pass && v.pass;
        verdicts.push_back(v.to_json());
    };

    if (suite == "lemma8" || suite == "all") add(ufalab::check_lemma8(bundle->system));
    if (suite == "lemma9" || suite == "all") {
        if (!bundle->provenance.certified_k) {
            std::cerr << "bundle carries no certified k; rebuild from an orient file\n";
            return kExitUsage;
        }
        add(ufalab::check_lemma9(bundle->system, *bundle->provenance.certified_k));
    }
    if (suite == "automata" || suite == "all") {
        bool pass = false;
        verdicts.push_back(automata_suite(bundle->system, state_cap, pass));
        all_pass = all_pass && pass;
    }
    if (suite == "theorem10" || suite == "all")
        add(ufalab::check_theorem10_suite(d_values));

    document["verdicts"] = verdicts;
    document["pass"] = all_pass;
    emit(document, out_path);

    // Short table on stderr; stdout stays machine-readable.
    std::cerr << "check                pass\n"
              << "-------------------------\n";
    for (const auto& v : verdicts) {
        std::string name = v.at("check").get<std::string>();
        name.resize(20, ' ');
        std::cerr << name << " " << (v.at("pass").get<bool>() ? "yes" : "NO") << "\n";
    }
    return all_pass ? kExitPass : kExitCheckFailure;
}

int run_member(const std::string& bundle_path, const std::string& length_spec,
               const std::string& out_path) {
    ufalab::InstanceBundle bundle = load_bundle(bundle_path);
    const ufalab::ModuliSystem& ms = bundle.system;

    mpz_class length;
    if (length_spec == "product-of-all-primes") {
        length = ms.primes_product();
    } else if (length_spec.rfind("residues:", 0) == 0) {
        std::vector<std::uint64_t> residues;
        std::string rest = length_spec.substr(9);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            std::size_t comma = rest.find(',', pos);
            std::string field = rest.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (field.empty()) throw std::invalid_argument("empty residue field");
            residues.push_back(std::stoull(field));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (residues.size() != ms.prime_count())
            throw std::invalid_argument("expected " + std::to_string(ms.prime_count()) +
                                        " residues, got " + std::to_string(residues.size()));
        length = ufalab::crt_reconstruct(ms, ufalab::ResidueVector{std::move(residues)});
    } else {
        length = mpz_class(length_spec);
        if (length < 0) throw std::invalid_argument("length must be nonnegative");
    }

    ufalab::ResidueVector rv = ufalab::residues_of(ms, length);
    std::optional<int> vertex =
        length == 0 ? std::nullopt : ufalab::accepted_by(ms, rv);

    Json document;
    document["length"] = length.get_str();
    document["residues"] = ufalab::residue_vector_to_json(rv);
    document["accepting_vertex"] = vertex ? Json(*vertex) : Json(nullptr);
    document["in_language"] = vertex.has_value();
    document["in_complement"] = !vertex.has_value();
    emit(document, out_path);
    return kExitPass;
}

int run_export(const std::string& bundle_path, const std::string& what,
               std::uint64_t cap, const std::string& out_path) {
    ufalab::InstanceBundle bundle = load_bundle(bundle_path);
    const ufalab::ModuliSystem& ms = bundle.system;

    if (what == "tournament-dot") {
        std::string dot = ufalab::tournament_to_dot(ms.tournament());
        if (out_path.empty())
            std::cout << dot;
        else
            ufalab::write_text_file(out_path, dot);
        return kExitPass;
    }
    if (what == "ufa-dot") {
        ufalab::UnaryNFA ufa = ufalab::build_ufa(ms, cap);
        std::string dot = ufalab::nfa_to_dot(ufa, cap);
        if (out_path.empty())
            std::cout << dot;
        else
            ufalab::write_text_file(out_path, dot);
        return kExitPass;
    }
    if (what == "ufa-json") {
        emit(ufalab::nfa_to_json(ufalab::build_ufa(ms, cap)), out_path);
        return kExitPass;
    }
    emit(ufalab::swdfa_to_json(ufalab::build_swdfa(ms, false, cap)), out_path);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unambiguous unary automata from tournament orientations and "
                 "prime residue systems, with mechanical lemma checkers"};
    app.require_subcommand(1);

    // orient
    auto* orient = app.add_subcommand(
        "orient", "Search for a tournament without small inbound-covering sets");
    int orient_k = 1;
    std::optional<int> orient_n;
    std::uint64_t orient_seed = 1, orient_tries = 100000;
    std::string orient_out;
    orient->add_option("--k", orient_k, "Covering-size threshold to exclude")->required();
    orient->add_option("--n", orient_n, "Vertex count (defaults to 3 k^2 2^k)");
    orient->add_option("--seed", orient_seed, "Search seed");
    orient->add_option("--max-tries", orient_tries, "Orientations to draw before giving up");
    orient->add_option("--out", orient_out, "Output file (default stdout)");

    // build
    auto* build = app.add_subcommand("build", "Assemble an instance bundle");
    int build_b = 2;
    std::string build_tournament, build_mode = "desk", build_out;
    build->add_option("--b", build_b, "Base b >= 2 (N = b^n primes)")->required();
    build->add_option("--tournament", build_tournament, "Tournament JSON file")
        ->required();
    build->add_option("--prime-mode", build_mode, "cluster | desk")
        ->check(CLI::IsMember({"cluster", "desk"}));
    build->add_option("--out", build_out, "Output file (default stdout)");

    // check
    auto* check = app.add_subcommand("check", "Run verification suites");
    std::string check_bundle, check_suite = "all", check_out;
    std::vector<int> check_d;
    std::uint64_t check_cap = 200'000;
    check->add_option("--bundle", check_bundle, "Instance bundle JSON file");
    check->add_option("--suite", check_suite, "lemma8 | lemma9 | theorem10 | automata | all")
        ->check(CLI::IsMember({"lemma8", "lemma9", "theorem10", "automata", "all"}));
    check->add_option("--d", check_d, "Theorem-10 parameter d (repeatable; default 8 9 10)");
    check->add_option("--out", check_out, "Verdict file (default stdout)");
    check->add_option("--state-cap", check_cap, "Explicit automaton cap for the automata suite");

    // member
    auto* member = app.add_subcommand("member", "Query membership of a word length");
    std::string member_bundle, member_length, member_out;
    member->add_option("--bundle", member_bundle, "Instance bundle JSON file")->required();
    member
        ->add_option("--length", member_length,
                     "Decimal length, 'product-of-all-primes', or 'residues:r0,r1,...'")
        ->required();
    member->add_option("--out", member_out, "Output file (default stdout)");

    // export
    auto* exp = app.add_subcommand("export", "Export explicit automata and graphs");
    std::string export_bundle, export_what, export_out;
    std::uint64_t export_cap = 100'000;
    exp->add_option("--bundle", export_bundle, "Instance bundle JSON file")->required();
    exp->add_option("--what", export_what,
                    "ufa-dot | ufa-json | swdfa-json | tournament-dot")
        ->required()
        ->check(CLI::IsMember({"ufa-dot", "ufa-json", "swdfa-json", "tournament-dot"}));
    exp->add_option("--cap", export_cap, "State/node cap for explicit exports");
    exp->add_option("--out", export_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (orient->parsed())
            return run_orient(orient_k, orient_n, orient_seed, orient_tries, orient_out);
        if (build->parsed())
            return run_build(build_b, build_tournament, build_mode, build_out);
        if (check->parsed())
            return run_check(check_bundle, check_suite, check_d, check_out, check_cap);
        if (member->parsed()) return run_member(member_bundle, member_length, member_out);
        if (exp->parsed())
            return run_export(export_bundle, export_what, export_cap, export_out);
    } catch (const ufalab::CapExceededError& error) {
        std::cerr << error.what() << "\n";
        return kExitCheckFailure;
    } catch (const nlohmann::json::exception& error) {
        std::cerr << "document error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& error) {
        std::cerr << "invalid input: " << error.what() << "\n";
        return kExitCheckFailure;
    } catch (const std::exception& error) {
        std::cerr << error.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
