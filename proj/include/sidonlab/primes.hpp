#pragma once

#include <cstdint>
#include <vector>

namespace sidonlab {

/// All primes up to `limit`, ascending.
struct PrimePool {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;
};

/// Above this bound the sieve switches to fixed-size segments over [2, n].
inline constexpr std::uint64_t kSegmentedSieveThreshold = 1u << 22;

PrimePool primes_up_to(std::uint64_t n);

/// Primes q with lo < q <= hi. Throws DomainError if lo > hi.
std::vector<std::uint64_t> primes_in_interval(std::uint64_t lo, std::uint64_t hi);

} // namespace sidonlab
