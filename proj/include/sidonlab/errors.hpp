#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sidonlab {

/// Raised when an operation's precondition fails on otherwise well-formed input
/// (empty prime interval, sample size larger than the ground set, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised whenever an exact 64-bit computation would wrap.
class OverflowError : public DomainError {
public:
    using DomainError::DomainError;
};

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 checked_add(u64 a, u64 b) {
    u64 r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowError("64-bit overflow in " + std::to_string(a) + " + " + std::to_string(b));
    }
    return r;
}

inline u64 checked_mul(u64 a, u64 b) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError("64-bit overflow in " + std::to_string(a) + " * " + std::to_string(b));
    }
    return r;
}

inline u64 narrow_u64(u128 v) {
    if (v >> 64) throw OverflowError("value exceeds 64 bits");
    return static_cast<u64>(v);
}

std::string to_string(u128 v);

} // namespace sidonlab
