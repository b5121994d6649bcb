#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace ufalab {

/// Construction of an explicit automaton would exceed the caller's state cap.
/// Carries the exact required size (which can be far beyond any native range).
class CapExceededError : public std::runtime_error {
public:
    CapExceededError(mpz_class required, mpz_class cap, const std::string& what_object)
        : std::runtime_error(what_object + " needs " + required.get_str() +
                             " states, cap is " + cap.get_str()),
          required_(std::move(required)),
          cap_(std::move(cap)) {}

    const mpz_class& required() const { return required_; }
    const mpz_class& cap() const { return cap_; }

private:
    mpz_class required_;
    mpz_class cap_;
};

/// Two distinct vertices accepted the same residue vector. This never happens
/// for a valid moduli system; it signals a construction bug, so it is an
/// error rather than a value.
class AmbiguityError : public std::logic_error {
public:
    AmbiguityError(int first_vertex, int second_vertex)
        : std::logic_error("residue vector accepted by two vertices: " +
                           std::to_string(first_vertex) + " and " +
                           std::to_string(second_vertex)),
          first_(first_vertex),
          second_(second_vertex) {}

    int first_vertex() const { return first_; }
    int second_vertex() const { return second_; }

private:
    int first_;
    int second_;
};

/// A two-way machine violated its structural invariants (determinism,
/// sweeping direction, halting discipline).
class MalformedMachineError : public std::runtime_error {
public:
    explicit MalformedMachineError(const std::string& clause)
        : std::runtime_error("malformed sweeping machine: " + clause) {}
};

}  // namespace ufalab
