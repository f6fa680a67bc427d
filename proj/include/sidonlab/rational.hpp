#pragma once

#include "sidonlab/errors.hpp"

#include <compare>
#include <string>

namespace sidonlab {

/// Nonnegative exact fraction over 128-bit integers, always in lowest terms.
class Rational {
public:
    Rational() = default;
    Rational(u128 num, u128 den = 1);

    u128 num() const { return num_; }
    u128 den() const { return den_; }
    double to_double() const;
    /// `num/den`, always with an explicit denominator.
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const u128 l = a.num_ * b.den_;
        const u128 r = b.num_ * a.den_;
        return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    u128 num_ = 0;
    u128 den_ = 1;
};

u128 gcd_u128(u128 a, u128 b);

} // namespace sidonlab
