#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

namespace ufalab {

class ModuliSystem;

enum class TapeSymbol : std::uint8_t { letter = 0, left_marker = 1, right_marker = 2 };

/// Deterministic two-way automaton over the single-letter alphabet with
/// endpoint markers, restricted to sweeping motion: every state moves in one
/// fixed direction on the letter, reverses only at markers, and each run
/// terminates at a non-moving transition into a halt state.
class SweepingDFA {
public:
    struct Transition {
        std::uint32_t target = 0;
        int move = 0;  // -1, 0, +1
    };

    struct StateInfo {
        int pass = 0;        // 1..n for pass states, 0 for halt states
        int direction = 0;   // +1 / -1 for moving states, 0 for halt states
        std::optional<std::uint64_t> counter;  // tracked residue, when meaningful
    };

    SweepingDFA(std::uint32_t states, std::uint32_t initial,
                std::vector<std::uint8_t> accepting_mask,
                std::vector<std::array<std::optional<Transition>, 3>> delta,
                std::vector<StateInfo> info);

    std::uint32_t state_count() const { return states_; }
    std::uint32_t initial() const { return initial_; }
    bool is_accepting(std::uint32_t q) const { return accepting_mask_[q] != 0; }
    const StateInfo& info(std::uint32_t q) const { return info_[q]; }
    const std::optional<Transition>& transition(std::uint32_t q, TapeSymbol s) const {
        return delta_[q][static_cast<std::size_t>(s)];
    }

    /// The distinguished non-moving transitions; firing one ends the run.
    std::vector<std::pair<std::uint32_t, TapeSymbol>> halting_transitions() const;

    /// Re-checks determinism, sweeping direction and halting discipline;
    /// throws MalformedMachineError naming the violated clause.
    void validate() const;

    SweepingDFA with_flipped_accepting() const;

private:
    std::uint32_t states_;
    std::uint32_t initial_;
    std::vector<std::uint8_t> accepting_mask_;
    std::vector<std::array<std::optional<Transition>, 3>> delta_;
    std::vector<StateInfo> info_;
};

/// Pass-and-return machine for the moduli system: pass i counts the word
/// length modulo m_i left to right; at the right marker an acceptable
/// residue halts (accepting iff !complement), otherwise a per-pass return
/// state rewinds and the next pass starts; after the last pass the machine
/// halts with the opposite decision. Size: sum m_i + n + 1.
SweepingDFA build_swdfa(const ModuliSystem& ms, bool complement,
                        std::uint64_t state_cap);

struct SweepResult {
    bool accepted = false;
    bool halted = false;        // false when the run dies or loops forever
    std::string note;           // empty when halted
    // State observed each time the head is about to read the right marker,
    // and the tracked residue of that state when it has one.
    std::vector<std::uint32_t> right_marker_states;
    std::vector<std::optional<std::uint64_t>> pass_residues;
};

/// Position-by-position simulation; cost O(length) per sweep.
SweepResult run_swdfa_direct(const SweepingDFA& machine, std::uint64_t length);

/// Sweep-at-a-time evaluator: each crossing of the letter region applies the
/// letter map length times via its tail/cycle decomposition, so queries take
/// O(states) once per entry state and O(log) afterwards. Lengths are
/// arbitrary precision.
class SweepRunner {
public:
    explicit SweepRunner(const SweepingDFA& machine);

    SweepResult run(const mpz_class& length);

private:
    struct Orbit {
        std::vector<std::uint32_t> path;  // path[s] = state after s letter steps
        std::size_t tail = 0;
        std::size_t cycle = 0;   // 0 when the walk dies instead of cycling
    };
    const Orbit& orbit_from(std::uint32_t state);

    const SweepingDFA& machine_;
    std::unordered_map<std::uint32_t, Orbit> orbits_;
};

/// One-shot convenience over SweepRunner.
SweepResult run_swdfa(const SweepingDFA& machine, const mpz_class& length);

}  // namespace ufalab
