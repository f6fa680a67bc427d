#pragma once

#include "sidonlab/ground_set.hpp"
#include "sidonlab/rational.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace sidonlab {

enum class Mode { Additive, Multiplicative };

std::string_view mode_name(Mode mode);
/// Accepts additive|add|+ and multiplicative|mul|*.
Mode parse_mode(std::string_view text);

/// a+b or a*b, throwing OverflowError instead of wrapping.
inline u64 combine(u64 a, u64 b, Mode mode) {
    return mode == Mode::Additive ? checked_add(a, b) : checked_mul(a, b);
}

/// Ordered trivial quadruples {a,b}={c,d}: 2m^2 - m.
inline u128 trivial_count(u128 m) { return 2 * m * m - m; }

/// Unordered pairs (i <= j) above this count are refused by the sort-based histogram.
inline constexpr std::size_t kMaxSortedPairs = 60'000'000;

/// Visits every distinct value s of a*b (or a+b) over a,b in A, ascending, with the
/// number of unordered pairs {a,b} (repetition allowed) producing s and whether the
/// diagonal pair {a,a} is among them. The ordered count is 2*pairs - diagonal.
void for_each_pair_class(const GroundSet& A, Mode mode,
                         const std::function<void(u64 value, u64 pairs, bool diagonal)>& visit);

GroundSet combined_set(const GroundSet& A, Mode mode);
std::size_t combined_size(const GroundSet& A, Mode mode);

/// Number of ordered quadruples (a,b,c,d) in A^4 with a.b = c.d.
u64 energy(const GroundSet& A, Mode mode);
u64 nontrivial_energy(const GroundSet& A, Mode mode);

/// Unordered violations: unordered pairs of distinct multisets {a,b} != {c,d} with
/// equal value. Each 4-distinct solution has an orbit of 8 ordered quadruples and each
/// a+b=2c type solution an orbit of 4, so this equals N4/8 + N3/4.
u128 violation_count(const GroundSet& A, Mode mode);

struct EnergyReport {
    u64 set_size = 0;
    u64 energy_add = 0;
    u64 energy_mul = 0;
    u64 nontrivial_add = 0;
    u64 nontrivial_mul = 0;
    u64 sumset_size = 0;
    u64 productset_size = 0;
    Rational cs_lower_add;
    Rational cs_lower_mul;
};

EnergyReport energy_report(const GroundSet& A);

/// Ordered solutions of a+b=c+d in [n]^4 split by number of distinct entries:
/// counts[k-1] for k = 1..4.
using PatternCounts = std::array<u128, 4>;
/// Direct O(n^3) enumeration; limited to n <= 100.
PatternCounts pattern_counts_enumerated(u64 n);
/// n, 2n(n-1), 4*#{3-term APs}, sum_s u(s)(u(s)-2); O(n).
PatternCounts pattern_counts_closed_form(u64 n);

/// E[E_+(B)] over uniform m-subsets B of [n], exact. Pattern counts come from
/// enumeration for n <= 100 and from the closed form above that.
Rational expected_energy_exact(u64 n, u64 m);
/// Same expectation restricted to nontrivial solutions (3 or 4 distinct entries);
/// this is the part that scales like m^4/n.
Rational expected_nontrivial_energy_exact(u64 n, u64 m);

/// Dense pair-value ids for a small set: id(i, j) is the rank of a_i.a_j among all
/// distinct pair values. Used by the exhaustive and branch-and-bound searches.
class PairTable {
public:
    PairTable(const GroundSet& A, Mode mode);

    std::size_t size() const { return k_; }
    std::uint32_t id(std::size_t i, std::size_t j) const { return ids_[i * k_ + j]; }
    std::size_t num_ids() const { return values_.size(); }
    u64 value(std::uint32_t id) const { return values_[id]; }
    /// Unordered pairs of the full set sharing this value.
    std::uint32_t multiplicity(std::uint32_t id) const { return multiplicity_[id]; }

private:
    std::size_t k_;
    std::vector<std::uint32_t> ids_;
    std::vector<u64> values_;
    std::vector<std::uint32_t> multiplicity_;
};

/// Energy of a changing subset of a PairTable's set, updated in O(|subset|) per
/// insertion or removal. Tracks ordered pair counts r(s) and sum of r(s)^2.
class SubsetEnergy {
public:
    explicit SubsetEnergy(const PairTable& table);

    void clear();
    void add(std::size_t i);
    void remove(std::size_t i);
    /// Energy change if index i were inserted / removed.
    u128 add_delta(std::size_t i) const;
    u128 remove_delta(std::size_t i) const;

    u128 energy() const { return energy_; }
    std::size_t size() const { return members_.size(); }
    const std::vector<std::size_t>& members() const { return members_; }
    bool contains(std::size_t i) const { return in_[i] != 0; }
    bool low_energy() const { return energy_ < 2 * static_cast<u128>(size()) * size(); }

private:
    const PairTable* table_;
    std::vector<u64> counts_;
    std::vector<std::size_t> members_;
    std::vector<char> in_;
    u128 energy_ = 0;
};

} // namespace sidonlab
