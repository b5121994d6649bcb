#include "ufalab/sweeping_dfa.hpp"

#include <stdexcept>

#include "ufalab/errors.hpp"
#include "ufalab/residue_system.hpp"

namespace ufalab {

SweepingDFA::SweepingDFA(std::uint32_t states, std::uint32_t initial,
                         std::vector<std::uint8_t> accepting_mask,
                         std::vector<std::array<std::optional<Transition>, 3>> delta,
                         std::vector<StateInfo> info)
    : states_(states),
      initial_(initial),
      accepting_mask_(std::move(accepting_mask)),
      delta_(std::move(delta)),
      info_(std::move(info)) {
    if (accepting_mask_.size() != states_ || delta_.size() != states_ ||
        info_.size() != states_)
        throw std::invalid_argument("table sizes disagree with the state count");
    if (initial_ >= states_) throw std::invalid_argument("initial state out of range");
    validate();
}

std::vector<std::pair<std::uint32_t, TapeSymbol>> SweepingDFA::halting_transitions() const {
    std::vector<std::pair<std::uint32_t, TapeSymbol>> out;
    for (std::uint32_t q = 0; q < states_; ++q)
        for (std::size_t s = 0; s < 3; ++s)
            if (delta_[q][s] && delta_[q][s]->move == 0)
                out.emplace_back(q, static_cast<TapeSymbol>(s));
    return out;
}

void SweepingDFA::validate() const {
    for (std::uint32_t q = 0; q < states_; ++q) {
        const auto& letter = delta_[q][static_cast<std::size_t>(TapeSymbol::letter)];
        const auto& left = delta_[q][static_cast<std::size_t>(TapeSymbol::left_marker)];
        const auto& right = delta_[q][static_cast<std::size_t>(TapeSymbol::right_marker)];
        const StateInfo& meta = info_[q];

        if (letter) {
            if (letter->move == 0)
                throw MalformedMachineError("state " + std::to_string(q) +
                                            " halts on a letter");
            if (meta.direction != letter->move)
                throw MalformedMachineError("state " + std::to_string(q) +
                                            " moves against its declared direction");
            if (letter->target >= states_)
                throw MalformedMachineError("letter target out of range");
        }
        if (left) {
            if (left->move == -1)
                throw MalformedMachineError("state " + std::to_string(q) +
                                            " walks past the left marker");
            if (left->target >= states_)
                throw MalformedMachineError("left-marker target out of range");
        }
        if (right) {
            if (right->move == +1)
                throw MalformedMachineError("state " + std::to_string(q) +
                                            " walks past the right marker");
            if (right->target >= states_)
                throw MalformedMachineError("right-marker target out of range");
        }
        for (std::size_t s = 0; s < 3; ++s) {
            if (!delta_[q][s] || delta_[q][s]->move != 0) continue;
            std::uint32_t halt = delta_[q][s]->target;
            for (std::size_t s2 = 0; s2 < 3; ++s2)
                if (delta_[halt][s2])
                    throw MalformedMachineError(
                        "halting transition targets state " + std::to_string(halt) +
                        " which still has outgoing transitions");
            if (info_[halt].direction != 0)
                throw MalformedMachineError("halt state " + std::to_string(halt) +
                                            " declares a movement direction");
        }
        if (!letter && !left && !right && meta.direction != 0)
            throw MalformedMachineError("moving state " + std::to_string(q) +
                                        " has no transitions");
    }
}

SweepingDFA SweepingDFA::with_flipped_accepting() const {
    std::vector<std::uint8_t> flipped(accepting_mask_.size());
    for (std::size_t q = 0; q < flipped.size(); ++q)
        flipped[q] = accepting_mask_[q] ? 0 : 1;
    return SweepingDFA(states_, initial_, std::move(flipped), delta_, info_);
}

SweepingDFA build_swdfa(const ModuliSystem& ms, bool complement,
                        std::uint64_t state_cap) {
    const int n = ms.vertex_count();
    mpz_class required = mpz_class(n) + 1;
    std::vector<mpz_class> moduli(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        moduli[static_cast<std::size_t>(i - 1)] = ms.modulus_value(i);
        required += moduli[static_cast<std::size_t>(i - 1)];
    }
    if (required > mpz_class(static_cast<unsigned long>(state_cap)))
        throw CapExceededError(required, mpz_class(static_cast<unsigned long>(state_cap)),
                               "pass-and-return sweeping machine");

    std::vector<std::uint64_t> m(static_cast<std::size_t>(n));
    std::vector<std::uint64_t> offset(static_cast<std::size_t>(n));
    std::uint64_t next = 0;
    for (int i = 0; i < n; ++i) {
        m[static_cast<std::size_t>(i)] = moduli[static_cast<std::size_t>(i)].get_ui();
        offset[static_cast<std::size_t>(i)] = next;
        next += m[static_cast<std::size_t>(i)];
    }
    // Return states for passes 1..n-1, then the two halt states.
    const std::uint64_t return_base = next;
    const std::uint32_t halt_in_language = static_cast<std::uint32_t>(next + n - 1);
    const std::uint32_t halt_not_in_language = halt_in_language + 1;
    const std::uint32_t total = halt_not_in_language + 1;

    std::vector<std::array<std::optional<SweepingDFA::Transition>, 3>> delta(total);
    std::vector<SweepingDFA::StateInfo> info(total);
    auto set = [&](std::uint32_t q, TapeSymbol s, std::uint32_t target, int move) {
        delta[q][static_cast<std::size_t>(s)] = SweepingDFA::Transition{target, move};
    };

    for (int i = 1; i <= n; ++i) {
        const std::uint64_t mi = m[static_cast<std::size_t>(i - 1)];
        const std::uint64_t base = offset[static_cast<std::size_t>(i - 1)];
        for (std::uint64_t r = 0; r < mi; ++r) {
            const std::uint32_t q = static_cast<std::uint32_t>(base + r);
            info[q] = {i, +1, r};
            set(q, TapeSymbol::letter, static_cast<std::uint32_t>(base + (r + 1) % mi), +1);
            bool ok = ms.acceptable_under(
                i, [&](std::uint32_t j) { return r % ms.prime(j); });
            if (ok) {
                set(q, TapeSymbol::right_marker, halt_in_language, 0);
            } else if (i < n) {
                set(q, TapeSymbol::right_marker,
                    static_cast<std::uint32_t>(return_base + i - 1), -1);
            } else {
                set(q, TapeSymbol::right_marker, halt_not_in_language, 0);
            }
        }
        // Entry state of the pass also serves at the left marker.
        set(static_cast<std::uint32_t>(base), TapeSymbol::left_marker,
            static_cast<std::uint32_t>(base), +1);
    }
    for (int i = 1; i < n; ++i) {
        const std::uint32_t q = static_cast<std::uint32_t>(return_base + i - 1);
        info[q] = {i, -1, std::nullopt};
        set(q, TapeSymbol::letter, q, -1);
        set(q, TapeSymbol::left_marker,
            static_cast<std::uint32_t>(offset[static_cast<std::size_t>(i)]), +1);
    }
    info[halt_in_language] = {0, 0, std::nullopt};
    info[halt_not_in_language] = {0, 0, std::nullopt};

    std::vector<std::uint8_t> accepting(total, 0);
    accepting[complement ? halt_not_in_language : halt_in_language] = 1;

    return SweepingDFA(total, static_cast<std::uint32_t>(offset[0]), std::move(accepting),
                       std::move(delta), std::move(info));
}

namespace {

void record_right_marker(const SweepingDFA& machine, std::uint32_t state,
                         SweepResult& result) {
    result.right_marker_states.push_back(state);
    result.pass_residues.push_back(machine.info(state).counter);
}

}  // namespace

SweepResult run_swdfa_direct(const SweepingDFA& machine, std::uint64_t length) {
    machine.validate();
    SweepResult result;
    std::uint64_t position = 0;
    std::uint32_t state = machine.initial();
    // A deterministic machine revisiting a (state, position) configuration
    // loops forever, so states * (length + 2) steps suffice.
    const unsigned __int128 budget =
        static_cast<unsigned __int128>(machine.state_count()) * (length + 2) + 2;
    unsigned __int128 steps = 0;
    while (true) {
        TapeSymbol symbol = position == 0 ? TapeSymbol::left_marker
                            : position == length + 1 ? TapeSymbol::right_marker
                                                     : TapeSymbol::letter;
        if (symbol == TapeSymbol::right_marker)
            record_right_marker(machine, state, result);
        const auto& step = machine.transition(state, symbol);
        if (!step) {
            result.note = "run died: no transition";
            return result;
        }
        if (step->move == 0) {
            result.halted = true;
            result.accepted = machine.is_accepting(step->target);
            return result;
        }
        state = step->target;
        position = static_cast<std::uint64_t>(static_cast<std::int64_t>(position) +
                                              step->move);
        if (++steps > budget) {
            result.note = "run loops forever";
            return result;
        }
    }
}

SweepRunner::SweepRunner(const SweepingDFA& machine) : machine_(machine) {
    machine_.validate();
}

const SweepRunner::Orbit& SweepRunner::orbit_from(std::uint32_t state) {
    auto found = orbits_.find(state);
    if (found != orbits_.end()) return found->second;

    Orbit orbit;
    std::vector<std::int64_t> seen_at(machine_.state_count(), -1);
    std::uint32_t current = state;
    while (true) {
        if (seen_at[current] >= 0) {
            orbit.tail = static_cast<std::size_t>(seen_at[current]);
            orbit.cycle = orbit.path.size() - orbit.tail;
            break;
        }
        seen_at[current] = static_cast<std::int64_t>(orbit.path.size());
        orbit.path.push_back(current);
        const auto& step = machine_.transition(current, TapeSymbol::letter);
        if (!step) break;  // dies after path.size()-1 letter steps
        current = step->target;
    }
    return orbits_.emplace(state, std::move(orbit)).first->second;
}

SweepResult SweepRunner::run(const mpz_class& length) {
    if (length < 0) throw std::invalid_argument("length must be nonnegative");
    SweepResult result;
    bool at_left = true;
    std::uint32_t state = machine_.initial();
    // (state, side) configurations at markers repeat only in a loop.
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(machine_.state_count()) * 2, 0);
    while (true) {
        std::size_t config = static_cast<std::size_t>(state) * 2 + (at_left ? 0 : 1);
        if (seen[config]) {
            result.note = "run loops forever";
            return result;
        }
        seen[config] = 1;

        if (!at_left) record_right_marker(machine_, state, result);
        const auto& step = machine_.transition(
            state, at_left ? TapeSymbol::left_marker : TapeSymbol::right_marker);
        if (!step) {
            result.note = "run died: no transition";
            return result;
        }
        if (step->move == 0) {
            result.halted = true;
            result.accepted = machine_.is_accepting(step->target);
            return result;
        }

        // Cross the letter region: apply the letter map `length` times.
        const Orbit& orbit = orbit_from(step->target);
        if (length < static_cast<unsigned long>(orbit.path.size())) {
            state = orbit.path[length.get_ui()];
        } else if (orbit.cycle == 0) {
            result.note = "run died: no transition";
            return result;
        } else {
            const unsigned long cyc = static_cast<unsigned long>(orbit.cycle);
            unsigned long rem = mpz_fdiv_ui(length.get_mpz_t(), cyc);
            unsigned long tail_rem = static_cast<unsigned long>(orbit.tail % orbit.cycle);
            std::size_t index = orbit.tail + (rem + cyc - tail_rem) % cyc;
            state = orbit.path[index];
        }
        at_left = !at_left;
    }
}

SweepResult run_swdfa(const SweepingDFA& machine, const mpz_class& length) {
    SweepRunner runner(machine);
    return runner.run(length);
}

}  // namespace ufalab
