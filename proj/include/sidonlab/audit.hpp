#pragma once

#include "sidonlab/rational.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sidonlab {

/// A reported number: exact integer, exact fraction, or a float.
using Quantity = std::variant<u64, Rational, double>;

double to_double(const Quantity& q);

/// One line of an audit: lhs compared against rhs. `pass` is empty for a check
/// that does not apply to the input.
struct AuditCheck {
    std::string check;
    Quantity lhs;
    Quantity rhs;
    std::optional<bool> pass;
};

} // namespace sidonlab
