#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ufalab {

class ModuliSystem;

/// Nondeterministic finite automaton over the single-letter alphabet; the
/// letter is implicit, so transitions are plain (source, target) pairs.
class UnaryNFA {
public:
    UnaryNFA(std::uint32_t states, std::uint32_t initial,
             std::vector<std::uint32_t> accepting,
             std::vector<std::pair<std::uint32_t, std::uint32_t>> transitions);

    std::uint32_t state_count() const { return states_; }
    std::uint32_t initial() const { return initial_; }
    bool is_accepting(std::uint32_t q) const { return accepting_mask_[q] != 0; }
    const std::vector<std::uint32_t>& accepting_states() const { return accepting_; }
    std::size_t transition_count() const { return targets_.size(); }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> transitions() const;

    /// Outgoing targets of q (sorted, deduplicated).
    const std::uint32_t* successors_begin(std::uint32_t q) const {
        return targets_.data() + offsets_[q];
    }
    const std::uint32_t* successors_end(std::uint32_t q) const {
        return targets_.data() + offsets_[q + 1];
    }

    bool deterministic_and_complete() const;

private:
    std::uint32_t states_;
    std::uint32_t initial_;
    std::vector<std::uint32_t> accepting_;     // sorted
    std::vector<std::uint8_t> accepting_mask_;
    std::vector<std::uint32_t> offsets_;       // CSR, size states_+1
    std::vector<std::uint32_t> targets_;
};

/// Number of accepting runs, saturated at two: the ambiguity question only
/// needs 0 / 1 / "at least 2".
enum class RunCount : std::uint8_t { zero = 0, one = 1, two_or_more = 2 };

/// The cycle-structure 1UFA of the moduli system: a single initial state
/// plus one cycle of length m_i per vertex, entered at residue 1; state
/// (i, r) accepts iff residue class r is acceptable for vertex i.
/// Throws CapExceededError (with the exact required size) when
/// 1 + sum m_i > state_cap.
UnaryNFA build_ufa(const ModuliSystem& ms, std::uint64_t state_cap);

/// Successor-set stepping; cost O(length * active states).
bool step_accepts(const UnaryNFA& nfa, std::uint64_t length);

/// Saturating run counting by stepping.
RunCount step_count_runs(const UnaryNFA& nfa, std::uint64_t length);

/// Exact run counting by stepping (big-integer counts; small lengths only).
mpz_class count_accepting_runs_exact(const UnaryNFA& nfa, std::uint64_t length);

/// Matrix-power evaluator over the saturating semiring {0, 1, >=2}:
/// precomputes A^(2^k) ladders on demand and answers per-length queries by
/// binary expansion. Rows are kept sparse; squaring a functional automaton
/// stays linear in the state count.
class MatrixPowerEvaluator {
public:
    explicit MatrixPowerEvaluator(const UnaryNFA& nfa, std::size_t entry_cap = 0);

    RunCount count_runs(const mpz_class& length);
    bool accepts(const mpz_class& length) { return count_runs(length) != RunCount::zero; }

private:
    struct Matrix {
        // Per-row sorted (target, saturated count) entries.
        std::vector<std::vector<std::pair<std::uint32_t, std::uint8_t>>> rows;
        std::size_t entries = 0;
    };
    Matrix square(const Matrix& a) const;
    void ensure_ladder(std::size_t bits);

    const UnaryNFA& nfa_;
    std::size_t entry_cap_;
    std::vector<Matrix> ladder_;
};

/// Threshold below which accepts() and count_accepting_runs() step instead
/// of exponentiating.
inline constexpr std::uint64_t kSteppingThreshold = 1'000'000;

/// Membership of the given word length: stepping below kSteppingThreshold,
/// matrix powers above.
bool accepts(const UnaryNFA& nfa, const mpz_class& length);

/// Saturating accepting-run count with the same dispatch rule.
RunCount count_accepting_runs(const UnaryNFA& nfa, const mpz_class& length);

struct UnambiguityResult {
    bool unambiguous = true;
    // Populated when ambiguous: a length with two accepting runs and the
    // offending reachable, co-reachable off-diagonal state pair.
    std::optional<std::uint64_t> witness_length;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> witness_pair;
};

/// Decides the at-most-one-accepting-run property via the self-product:
/// ambiguous iff some off-diagonal pair is reachable from (initial,initial)
/// and co-reachable to an accepting pair. Memory is two states^2 bitsets.
UnambiguityResult is_unambiguous(const UnaryNFA& nfa);

/// Complements a deterministic complete automaton by flipping its accepting
/// set; throws std::invalid_argument on nondeterministic or partial input,
/// where the flip would be unsound.
UnaryNFA complement_accepting_flip(const UnaryNFA& nfa);

/// GraphViz rendering, gated by a node cap (throws CapExceededError).
std::string nfa_to_dot(const UnaryNFA& nfa, std::uint64_t node_cap);

}  // namespace ufalab
