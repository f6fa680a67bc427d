#pragma once

// Seeded pseudo-random source shared by every randomized operation.
//
// Generator: xorshift64* (Vigna, 2014) with shifts (12, 25, 27) and output
// multiplier 0x2545F4914F6CDD1D. The state is initialised as splitmix64(seed);
// a zero state is replaced by 0x9E3779B97F4A7C15. All derived quantities below
// are defined in terms of next() only, so any language can reproduce a run
// from its seed.

#include <cstdint>

namespace sidonlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for the k-th independent stream (trial, sample, ...) under a master seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
    return splitmix64(seed ^ splitmix64(k + 1));
}

class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed) : state_(splitmix64(seed)) {
        if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
    }

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    /// Uniform integer in [0, bound) by rejection of the low (2^64 mod bound) outputs.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

private:
    std::uint64_t state_;
};

} // namespace sidonlab
