#include "ufalab/unary_nfa.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "ufalab/errors.hpp"
#include "ufalab/residue_system.hpp"

namespace ufalab {

UnaryNFA::UnaryNFA(std::uint32_t states, std::uint32_t initial,
                   std::vector<std::uint32_t> accepting,
                   std::vector<std::pair<std::uint32_t, std::uint32_t>> transitions)
    : states_(states), initial_(initial) {
    if (states == 0) throw std::invalid_argument("automaton needs at least one state");
    if (initial >= states) throw std::invalid_argument("initial state out of range");
    accepting_mask_.assign(states, 0);
    for (std::uint32_t q : accepting) {
        if (q >= states) throw std::invalid_argument("accepting state out of range");
        accepting_mask_[q] = 1;
    }
    accepting_.clear();
    for (std::uint32_t q = 0; q < states; ++q)
        if (accepting_mask_[q]) accepting_.push_back(q);

    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()),
                      transitions.end());
    offsets_.assign(states + 1, 0);
    targets_.reserve(transitions.size());
    for (auto [src, tgt] : transitions) {
        if (src >= states || tgt >= states)
            throw std::invalid_argument("transition endpoint out of range");
        ++offsets_[src + 1];
    }
    for (std::uint32_t q = 0; q < states; ++q) offsets_[q + 1] += offsets_[q];
    for (auto [src, tgt] : transitions) targets_.push_back(tgt);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> UnaryNFA::transitions() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    out.reserve(targets_.size());
    for (std::uint32_t q = 0; q < states_; ++q)
        for (auto it = successors_begin(q); it != successors_end(q); ++it)
            out.emplace_back(q, *it);
    return out;
}

bool UnaryNFA::deterministic_and_complete() const {
    for (std::uint32_t q = 0; q < states_; ++q)
        if (successors_end(q) - successors_begin(q) != 1) return false;
    return true;
}

UnaryNFA build_ufa(const ModuliSystem& ms, std::uint64_t state_cap) {
    const int n = ms.vertex_count();
    mpz_class required = 1;
    std::vector<mpz_class> moduli(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        moduli[static_cast<std::size_t>(i - 1)] = ms.modulus_value(i);
        required += moduli[static_cast<std::size_t>(i - 1)];
    }
    if (required > mpz_class(static_cast<unsigned long>(state_cap)))
        throw CapExceededError(required, mpz_class(static_cast<unsigned long>(state_cap)),
                               "explicit cycle-structure automaton");

    std::vector<std::uint64_t> m(static_cast<std::size_t>(n));
    std::vector<std::uint64_t> offset(static_cast<std::size_t>(n));
    std::uint64_t next = 1;  // state 0 is the initial hub
    for (int i = 0; i < n; ++i) {
        m[static_cast<std::size_t>(i)] = moduli[static_cast<std::size_t>(i)].get_ui();
        offset[static_cast<std::size_t>(i)] = next;
        next += m[static_cast<std::size_t>(i)];
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> transitions;
    transitions.reserve(next + static_cast<std::uint64_t>(n));
    std::vector<std::uint32_t> accepting;
    for (int i = 1; i <= n; ++i) {
        const std::uint64_t mi = m[static_cast<std::size_t>(i - 1)];
        const std::uint64_t base = offset[static_cast<std::size_t>(i - 1)];
        transitions.emplace_back(0u, static_cast<std::uint32_t>(base + (1 % mi)));
        for (std::uint64_t r = 0; r < mi; ++r)
            transitions.emplace_back(static_cast<std::uint32_t>(base + r),
                                     static_cast<std::uint32_t>(base + (r + 1) % mi));
        for (std::uint64_t r = 0; r < mi; ++r) {
            bool ok = ms.acceptable_under(i, [&](std::uint32_t j) {
                return r % ms.prime(j);
            });
            if (ok) accepting.push_back(static_cast<std::uint32_t>(base + r));
        }
    }
    return UnaryNFA(static_cast<std::uint32_t>(next), 0, std::move(accepting),
                    std::move(transitions));
}

bool step_accepts(const UnaryNFA& nfa, std::uint64_t length) {
    std::vector<std::uint8_t> current(nfa.state_count(), 0);
    std::vector<std::uint32_t> active{nfa.initial()};
    current[nfa.initial()] = 1;
    std::vector<std::uint32_t> next_active;
    std::vector<std::uint8_t> next(nfa.state_count(), 0);
    for (std::uint64_t step = 0; step < length; ++step) {
        next_active.clear();
        for (std::uint32_t q : active) {
            for (auto it = nfa.successors_begin(q); it != nfa.successors_end(q); ++it) {
                if (!next[*it]) {
                    next[*it] = 1;
                    next_active.push_back(*it);
                }
            }
        }
        for (std::uint32_t q : active) current[q] = 0;
        std::swap(current, next);
        std::swap(active, next_active);
        if (active.empty()) return false;
    }
    for (std::uint32_t q : active)
        if (nfa.is_accepting(q)) return true;
    return false;
}

namespace {

inline std::uint8_t sat_add(std::uint8_t a, std::uint8_t b) {
    unsigned s = static_cast<unsigned>(a) + b;
    return static_cast<std::uint8_t>(s > 2 ? 2 : s);
}

inline std::uint8_t sat_mul(std::uint8_t a, std::uint8_t b) {
    unsigned s = static_cast<unsigned>(a) * b;
    return static_cast<std::uint8_t>(s > 2 ? 2 : s);
}

RunCount to_run_count(std::uint8_t c) {
    switch (c) {
        case 0: return RunCount::zero;
        case 1: return RunCount::one;
        default: return RunCount::two_or_more;
    }
}

}  // namespace

RunCount step_count_runs(const UnaryNFA& nfa, std::uint64_t length) {
    std::vector<std::uint8_t> counts(nfa.state_count(), 0);
    counts[nfa.initial()] = 1;
    std::vector<std::uint8_t> next(nfa.state_count(), 0);
    for (std::uint64_t step = 0; step < length; ++step) {
        std::fill(next.begin(), next.end(), 0);
        for (std::uint32_t q = 0; q < nfa.state_count(); ++q) {
            if (!counts[q]) continue;
            for (auto it = nfa.successors_begin(q); it != nfa.successors_end(q); ++it)
                next[*it] = sat_add(next[*it], counts[q]);
        }
        std::swap(counts, next);
    }
    std::uint8_t total = 0;
    for (std::uint32_t q : nfa.accepting_states()) total = sat_add(total, counts[q]);
    return to_run_count(total);
}

mpz_class count_accepting_runs_exact(const UnaryNFA& nfa, std::uint64_t length) {
    std::vector<mpz_class> counts(nfa.state_count());
    counts[nfa.initial()] = 1;
    std::vector<mpz_class> next(nfa.state_count());
    for (std::uint64_t step = 0; step < length; ++step) {
        for (auto& c : next) c = 0;
        for (std::uint32_t q = 0; q < nfa.state_count(); ++q) {
            if (counts[q] == 0) continue;
            for (auto it = nfa.successors_begin(q); it != nfa.successors_end(q); ++it)
                next[*it] += counts[q];
        }
        std::swap(counts, next);
    }
    mpz_class total = 0;
    for (std::uint32_t q : nfa.accepting_states()) total += counts[q];
    return total;
}

MatrixPowerEvaluator::MatrixPowerEvaluator(const UnaryNFA& nfa, std::size_t entry_cap)
    : nfa_(nfa),
      entry_cap_(entry_cap ? entry_cap
                           : std::max<std::size_t>(4'000'000,
                                                   64 * std::size_t{nfa.state_count()})) {
    Matrix base;
    base.rows.resize(nfa.state_count());
    for (std::uint32_t q = 0; q < nfa.state_count(); ++q) {
        for (auto it = nfa.successors_begin(q); it != nfa.successors_end(q); ++it)
            base.rows[q].emplace_back(*it, std::uint8_t{1});
        base.entries += base.rows[q].size();
    }
    ladder_.push_back(std::move(base));
}

MatrixPowerEvaluator::Matrix MatrixPowerEvaluator::square(const Matrix& a) const {
    Matrix out;
    out.rows.resize(a.rows.size());
    std::vector<std::uint8_t> acc(a.rows.size(), 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t q = 0; q < a.rows.size(); ++q) {
        touched.clear();
        for (auto [mid, c1] : a.rows[q]) {
            for (auto [tgt, c2] : a.rows[mid]) {
                if (!acc[tgt]) touched.push_back(tgt);
                acc[tgt] = sat_add(acc[tgt], sat_mul(c1, c2));
            }
        }
        std::sort(touched.begin(), touched.end());
        auto& row = out.rows[q];
        row.reserve(touched.size());
        for (std::uint32_t tgt : touched) {
            row.emplace_back(tgt, acc[tgt]);
            acc[tgt] = 0;
        }
        out.entries += row.size();
        if (out.entries > entry_cap_)
            throw std::runtime_error(
                "transition-matrix power became too dense (" +
                std::to_string(out.entries) + " entries); automaton unsuitable for "
                "sparse exponentiation");
    }
    return out;
}

void MatrixPowerEvaluator::ensure_ladder(std::size_t bits) {
    while (ladder_.size() < bits) ladder_.push_back(square(ladder_.back()));
}

RunCount MatrixPowerEvaluator::count_runs(const mpz_class& length) {
    if (length < 0) throw std::invalid_argument("length must be nonnegative");
    const std::size_t bits = mpz_sizeinbase(length.get_mpz_t(), 2);
    if (length > 0) ensure_ladder(bits);

    std::vector<std::pair<std::uint32_t, std::uint8_t>> vec{{nfa_.initial(), 1}};
    std::vector<std::uint8_t> acc(nfa_.state_count(), 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t bit = 0; bit < bits; ++bit) {
        if (!mpz_tstbit(length.get_mpz_t(), bit)) continue;
        const Matrix& mat = ladder_[bit];
        touched.clear();
        for (auto [q, c1] : vec) {
            for (auto [tgt, c2] : mat.rows[q]) {
                if (!acc[tgt]) touched.push_back(tgt);
                acc[tgt] = sat_add(acc[tgt], sat_mul(c1, c2));
            }
        }
        std::sort(touched.begin(), touched.end());
        vec.clear();
        for (std::uint32_t tgt : touched) {
            vec.emplace_back(tgt, acc[tgt]);
            acc[tgt] = 0;
        }
        if (vec.empty()) return RunCount::zero;
    }
    std::uint8_t total = 0;
    for (auto [q, c] : vec)
        if (nfa_.is_accepting(q)) total = sat_add(total, c);
    return to_run_count(total);
}

bool accepts(const UnaryNFA& nfa, const mpz_class& length) {
    if (length < 0) throw std::invalid_argument("length must be nonnegative");
    if (length <= static_cast<unsigned long>(kSteppingThreshold))
        return step_accepts(nfa, length.get_ui());
    MatrixPowerEvaluator eval(nfa);
    return eval.accepts(length);
}

RunCount count_accepting_runs(const UnaryNFA& nfa, const mpz_class& length) {
    if (length < 0) throw std::invalid_argument("length must be nonnegative");
    if (length <= static_cast<unsigned long>(kSteppingThreshold))
        return step_count_runs(nfa, length.get_ui());
    MatrixPowerEvaluator eval(nfa);
    return eval.count_runs(length);
}

namespace {

// Fixed-size bit array over state pairs, addressed as p * states + q.
class PairBits {
public:
    explicit PairBits(std::uint64_t bits) : words_((bits + 63) / 64, 0) {}
    bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

private:
    std::vector<std::uint64_t> words_;
};

struct ReverseAdjacency {
    std::vector<std::uint32_t> offsets;
    std::vector<std::uint32_t> sources;
};

ReverseAdjacency reverse_of(const UnaryNFA& nfa) {
    ReverseAdjacency r;
    r.offsets.assign(nfa.state_count() + 1, 0);
    for (std::uint32_t q = 0; q < nfa.state_count(); ++q)
        for (auto it = nfa.successors_begin(q); it != nfa.successors_end(q); ++it)
            ++r.offsets[*it + 1];
    for (std::uint32_t q = 0; q < nfa.state_count(); ++q) r.offsets[q + 1] += r.offsets[q];
    std::vector<std::uint32_t> cursor(r.offsets.begin(), r.offsets.end() - 1);
    r.sources.resize(nfa.transition_count());
    for (std::uint32_t q = 0; q < nfa.state_count(); ++q)
        for (auto it = nfa.successors_begin(q); it != nfa.successors_end(q); ++it)
            r.sources[cursor[*it]++] = q;
    return r;
}

// Lockstep BFS distance from one pair to a target predicate; used only to
// produce a concrete witness length once ambiguity is established.
std::uint64_t pair_bfs_distance(const UnaryNFA& nfa, std::uint64_t start,
                                const std::function<bool(std::uint64_t)>& is_target) {
    const std::uint64_t states = nfa.state_count();
    PairBits seen(states * states);
    std::vector<std::uint64_t> frontier{start}, next;
    seen.set(start);
    if (is_target(start)) return 0;
    std::uint64_t depth = 0;
    while (!frontier.empty()) {
        ++depth;
        next.clear();
        for (std::uint64_t code : frontier) {
            const std::uint32_t p = static_cast<std::uint32_t>(code / states);
            const std::uint32_t q = static_cast<std::uint32_t>(code % states);
            for (auto pi = nfa.successors_begin(p); pi != nfa.successors_end(p); ++pi) {
                for (auto qi = nfa.successors_begin(q); qi != nfa.successors_end(q); ++qi) {
                    std::uint64_t succ = std::uint64_t{*pi} * states + *qi;
                    if (seen.test(succ)) continue;
                    seen.set(succ);
                    if (is_target(succ)) return depth;
                    next.push_back(succ);
                }
            }
        }
        std::swap(frontier, next);
    }
    throw std::logic_error("witness target unreachable; ambiguity detection is inconsistent");
}

}  // namespace

UnambiguityResult is_unambiguous(const UnaryNFA& nfa) {
    const std::uint64_t states = nfa.state_count();
    if (states > 80'000)
        throw std::invalid_argument("self-product over " + std::to_string(states) +
                                    " states needs more memory than this build allows");
    const std::uint64_t pair_count = states * states;

    // Forward phase: pairs reachable from (initial, initial) in lockstep.
    PairBits reachable(pair_count);
    std::vector<std::uint64_t> frontier, next;
    const std::uint64_t start = std::uint64_t{nfa.initial()} * states + nfa.initial();
    reachable.set(start);
    frontier.push_back(start);
    while (!frontier.empty()) {
        next.clear();
        for (std::uint64_t code : frontier) {
            const std::uint32_t p = static_cast<std::uint32_t>(code / states);
            const std::uint32_t q = static_cast<std::uint32_t>(code % states);
            for (auto pi = nfa.successors_begin(p); pi != nfa.successors_end(p); ++pi) {
                for (auto qi = nfa.successors_begin(q); qi != nfa.successors_end(q); ++qi) {
                    std::uint64_t succ = std::uint64_t{*pi} * states + *qi;
                    if (!reachable.test(succ)) {
                        reachable.set(succ);
                        next.push_back(succ);
                    }
                }
            }
        }
        std::swap(frontier, next);
    }

    // Backward phase within the reachable set, seeded at reachable accepting
    // pairs. Every marked pair is reachable and co-reachable.
    ReverseAdjacency radj = reverse_of(nfa);
    PairBits marked(pair_count);
    std::optional<std::uint64_t> offending;
    frontier.clear();
    for (std::uint32_t f1 : nfa.accepting_states()) {
        for (std::uint32_t f2 : nfa.accepting_states()) {
            std::uint64_t code = std::uint64_t{f1} * states + f2;
            if (!reachable.test(code) || marked.test(code)) continue;
            marked.set(code);
            frontier.push_back(code);
            if (f1 != f2 && !offending) offending = code;
        }
    }
    while (!frontier.empty() && !offending) {
        next.clear();
        for (std::uint64_t code : frontier) {
            const std::uint32_t p = static_cast<std::uint32_t>(code / states);
            const std::uint32_t q = static_cast<std::uint32_t>(code % states);
            const auto pb = radj.offsets[p], pe = radj.offsets[p + 1];
            const auto qb = radj.offsets[q], qe = radj.offsets[q + 1];
            for (std::uint32_t pi = pb; pi < pe; ++pi) {
                for (std::uint32_t qi = qb; qi < qe; ++qi) {
                    std::uint64_t pred =
                        std::uint64_t{radj.sources[pi]} * states + radj.sources[qi];
                    if (!reachable.test(pred) || marked.test(pred)) continue;
                    marked.set(pred);
                    next.push_back(pred);
                    if (radj.sources[pi] != radj.sources[qi]) {
                        offending = pred;
                        break;
                    }
                }
                if (offending) break;
            }
            if (offending) break;
        }
        std::swap(frontier, next);
    }

    UnambiguityResult result;
    if (!offending) return result;

    result.unambiguous = false;
    const std::uint32_t p = static_cast<std::uint32_t>(*offending / states);
    const std::uint32_t q = static_cast<std::uint32_t>(*offending % states);
    result.witness_pair = std::make_pair(p, q);
    std::uint64_t to_pair = pair_bfs_distance(
        nfa, start, [&](std::uint64_t code) { return code == *offending; });
    std::uint64_t to_accepting = pair_bfs_distance(nfa, *offending, [&](std::uint64_t code) {
        return nfa.is_accepting(static_cast<std::uint32_t>(code / states)) &&
               nfa.is_accepting(static_cast<std::uint32_t>(code % states));
    });
    result.witness_length = to_pair + to_accepting;
    return result;
}

UnaryNFA complement_accepting_flip(const UnaryNFA& nfa) {
    if (!nfa.deterministic_and_complete())
        throw std::invalid_argument(
            "accepting-set flip is only sound for deterministic complete automata");
    std::vector<std::uint32_t> flipped;
    for (std::uint32_t q = 0; q < nfa.state_count(); ++q)
        if (!nfa.is_accepting(q)) flipped.push_back(q);
    return UnaryNFA(nfa.state_count(), nfa.initial(), std::move(flipped),
                    nfa.transitions());
}

std::string nfa_to_dot(const UnaryNFA& nfa, std::uint64_t node_cap) {
    if (nfa.state_count() > node_cap)
        throw CapExceededError(mpz_class(nfa.state_count()),
                               mpz_class(static_cast<unsigned long>(node_cap)),
                               "automaton rendering");
    std::ostringstream out;
    out << "digraph nfa {\n  rankdir=LR;\n  node [shape=circle];\n";
    out << "  start [shape=point];\n";
    for (std::uint32_t q : nfa.accepting_states())
        out << "  " << q << " [shape=doublecircle];\n";
    out << "  start -> " << nfa.initial() << ";\n";
    for (auto [src, tgt] : nfa.transitions())
        out << "  " << src << " -> " << tgt << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace ufalab
