#include "ufalab/primes.hpp"

#include <cmath>
#include <stdexcept>

namespace ufalab {

std::string to_string(PrimeMode mode) {
    return mode == PrimeMode::paper_cluster ? "paper-cluster" : "desk";
}

PrimeMode prime_mode_from_string(const std::string& s) {
    if (s == "paper-cluster" || s == "cluster") return PrimeMode::paper_cluster;
    if (s == "desk") return PrimeMode::desk;
    throw std::invalid_argument("unknown prime mode: " + s);
}

std::vector<std::uint64_t> sieve(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<std::uint8_t> composite(limit + 1, 0);
    for (std::uint64_t p = 2; p * p <= limit; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t q = p * p; q <= limit; q += p) composite[q] = 1;
    }
    for (std::uint64_t p = 2; p <= limit; ++p)
        if (!composite[p]) primes.push_back(p);
    return primes;
}

bool is_prime_trial_division(std::uint64_t x) {
    if (x < 2) return false;
    if (x % 2 == 0) return x == 2;
    if (x % 3 == 0) return x == 3;
    for (std::uint64_t d = 5; d * d <= x; d += 6) {
        if (x % d == 0 || x % (d + 2) == 0) return false;
    }
    return true;
}

ClusterSelection select_cluster(int count) {
    if (count < 2) throw std::invalid_argument("cluster selection needs N >= 2");
    const double n = static_cast<double>(count);
    const double log_n = std::log(n);
    const double lo = 3.0 * n * n * log_n;
    const double hi = 4.0 * n * n * log_n;
    const double window = 3.0 * n * log_n;

    ClusterSelection result;
    result.diagnostic.interval_lo = static_cast<std::uint64_t>(std::ceil(lo));
    result.diagnostic.interval_hi = static_cast<std::uint64_t>(std::floor(hi));
    result.diagnostic.window_length = window;
    result.diagnostic.needed = static_cast<std::size_t>(count);

    std::vector<std::uint64_t> all = sieve(result.diagnostic.interval_hi);
    std::vector<std::uint64_t> interval;
    for (std::uint64_t p : all)
        if (p >= result.diagnostic.interval_lo) interval.push_back(p);
    result.diagnostic.primes_in_interval = interval.size();
    if (interval.empty()) return result;

    // Densest window anchored at a prime; an optimal window can always be
    // slid right until its left edge hits a prime.
    std::size_t best_anchor = 0;
    std::size_t best_census = 0;
    std::size_t right = 0;
    for (std::size_t left = 0; left < interval.size(); ++left) {
        if (right < left) right = left;
        const double window_end =
            static_cast<double>(interval[left]) + window;
        while (right + 1 < interval.size() &&
               static_cast<double>(interval[right + 1]) <= window_end)
            ++right;
        std::size_t census = right - left + 1;
        if (census > best_census) {
            best_census = census;
            best_anchor = left;
        }
    }
    result.diagnostic.best_window_lo = interval[best_anchor];
    result.diagnostic.best_window_census = best_census;

    if (best_census < static_cast<std::size_t>(count)) return result;

    PrimeSet set;
    set.mode = PrimeMode::paper_cluster;
    set.primes.assign(interval.begin() + static_cast<std::ptrdiff_t>(best_anchor),
                      interval.begin() + static_cast<std::ptrdiff_t>(best_anchor) +
                          count);
    validate_prime_set(set);
    result.primes = std::move(set);
    return result;
}

PrimeSet select_desk(int count, std::uint64_t floor) {
    if (count < 1) throw std::invalid_argument("need at least one prime");
    PrimeSet set;
    set.mode = PrimeMode::desk;
    set.primes.reserve(static_cast<std::size_t>(count));
    std::uint64_t candidate = floor;
    while (set.primes.size() < static_cast<std::size_t>(count)) {
        ++candidate;
        if (is_prime_trial_division(candidate)) set.primes.push_back(candidate);
    }
    return set;
}

void validate_prime_set(const PrimeSet& set) {
    if (set.primes.empty()) throw std::runtime_error("prime set is empty");
    std::uint64_t prev = 0;
    for (std::uint64_t p : set.primes) {
        if (!is_prime_trial_division(p))
            throw std::runtime_error(std::to_string(p) + " is not prime");
        if (p <= prev) throw std::runtime_error("primes not strictly increasing");
        prev = p;
    }
    if (set.mode == PrimeMode::paper_cluster) {
        const double n = static_cast<double>(set.primes.size());
        const std::uint64_t first = set.primes.front();
        const std::uint64_t last = set.primes.back();
        // ratio check without floating division: last * N <= first * (N + 1)
        if (static_cast<unsigned __int128>(last) * set.primes.size() >
            static_cast<unsigned __int128>(first) * (set.primes.size() + 1))
            throw std::runtime_error("cluster ratio exceeds 1 + 1/N");
        if (static_cast<double>(last) > 4.0 * n * n * std::log(n))
            throw std::runtime_error("largest cluster prime exceeds 4 N^2 ln N");
    }
}

}  // namespace ufalab
