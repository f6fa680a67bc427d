#include "sidonlab/primes.hpp"

#include "sidonlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sidonlab {

namespace {

constexpr std::uint64_t kSegmentSize = 1u << 18;

u64 isqrt(u64 n) {
    auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<u64> simple_sieve(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

// Primes in [lo, hi] (closed) using base primes up to sqrt(hi), one segment at a time.
std::vector<u64> segmented_sieve(u64 lo, u64 hi) {
    std::vector<u64> out;
    if (hi < 2 || lo > hi) return out;
    lo = std::max<u64>(lo, 2);
    const std::vector<u64> base = simple_sieve(isqrt(hi));
    std::vector<char> composite(kSegmentSize);
    for (u64 seg_lo = lo; seg_lo <= hi; seg_lo += kSegmentSize) {
        const u64 seg_hi = std::min(hi, seg_lo + kSegmentSize - 1);
        std::fill(composite.begin(), composite.end(), 0);
        for (u64 p : base) {
            if (p * p > seg_hi) break;
            u64 start = std::max(p * p, (seg_lo + p - 1) / p * p);
            for (u64 j = start; j <= seg_hi; j += p) composite[j - seg_lo] = 1;
        }
        for (u64 v = seg_lo; v <= seg_hi; ++v) {
            if (!composite[v - seg_lo]) out.push_back(v);
        }
        if (seg_hi == hi) break;
    }
    return out;
}

} // namespace

PrimePool primes_up_to(std::uint64_t n) {
    PrimePool pool;
    pool.limit = n;
    pool.primes = n <= kSegmentedSieveThreshold ? simple_sieve(n) : segmented_sieve(2, n);
    return pool;
}

std::vector<std::uint64_t> primes_in_interval(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) {
        throw DomainError("invalid prime interval: lo=" + std::to_string(lo) +
                          " exceeds hi=" + std::to_string(hi));
    }
    if (hi <= kSegmentedSieveThreshold) {
        std::vector<u64> all = simple_sieve(hi);
        all.erase(all.begin(), std::upper_bound(all.begin(), all.end(), lo));
        return all;
    }
    return segmented_sieve(lo + 1, hi);
}

} // namespace sidonlab
