#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ufalab {

enum class PrimeMode { paper_cluster, desk };

std::string to_string(PrimeMode mode);
PrimeMode prime_mode_from_string(const std::string& s);

/// Ordered distinct primes P_0 < ... < P_{N-1}.
struct PrimeSet {
    PrimeMode mode = PrimeMode::desk;
    std::vector<std::uint64_t> primes;

    std::size_t size() const { return primes.size(); }
    bool operator==(const PrimeSet&) const = default;
};

/// All primes <= limit in increasing order (empty for limit < 2).
std::vector<std::uint64_t> sieve(std::uint64_t limit);

/// Deterministic trial-division primality test; independent of the sieve.
bool is_prime_trial_division(std::uint64_t x);

/// Diagnostic returned when the densest window cannot supply N primes.
/// The cluster interval only works for large enough N, so small N can fail.
struct ClusterDiagnostic {
    std::uint64_t interval_lo = 0;   // ceil(3 N^2 ln N)
    std::uint64_t interval_hi = 0;   // floor(4 N^2 ln N)
    double window_length = 0.0;      // 3 N ln N
    std::uint64_t best_window_lo = 0;
    std::size_t best_window_census = 0;
    std::size_t primes_in_interval = 0;
    std::size_t needed = 0;
};

struct ClusterSelection {
    std::optional<PrimeSet> primes;  // set on success, in paper_cluster mode
    ClusterDiagnostic diagnostic;    // always populated
};

/// Picks N primes within a factor 1 + 1/N of each other from
/// [3 N^2 ln N, 4 N^2 ln N]: slides a window of length 3 N ln N anchored at
/// each prime, takes the window holding the most primes (lowest anchor on
/// ties) and returns its first N primes. Any N primes inside one window meet
/// the ratio bound since window/start <= 1/N.
ClusterSelection select_cluster(int count);

/// The N smallest primes strictly greater than floor (desk mode).
PrimeSet select_desk(int count, std::uint64_t floor);

/// Re-checks every PrimeSet invariant with primality done by trial division:
/// elements prime, strictly increasing, and in paper-cluster mode
/// P_{N-1}/P_0 <= 1 + 1/N with P_{N-1} <= 4 N^2 ln N.
/// Throws std::runtime_error naming the violated clause.
void validate_prime_set(const PrimeSet& set);

}  // namespace ufalab
