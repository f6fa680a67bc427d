#pragma once

#include "sidonlab/energy.hpp"
#include "sidonlab/ground_set.hpp"

#include <cstdint>
#include <optional>

namespace sidonlab {

/// a.b = c.d with {a,b} != {c,d} as multisets, all four taken from the input set.
struct SidonWitness {
    u64 a = 0, b = 0, c = 0, d = 0;
    friend bool operator==(const SidonWitness&, const SidonWitness&) = default;
};

/// nullopt when A is Sidon in `mode`. Otherwise the first collision met while
/// scanning unordered pairs (i <= j) in lexicographic index order; the earlier pair
/// is reported as (a, b) and the later as (c, d).
std::optional<SidonWitness> sidon_check(const GroundSet& A, Mode mode);

inline bool is_sidon(const GroundSet& A, Mode mode) { return !sidon_check(A, mode).has_value(); }

struct MaxSubsetResult {
    GroundSet subset;
    std::size_t size = 0;
    bool optimal = false;
    std::uint64_t nodes_explored = 0;
    bool budget_exhausted = false;
};

/// Branch and bound for the largest Sidon subset.
///
/// Elements are ordered by decreasing conflict degree (how many other pairs share
/// a value with one of the element's pairs), ties by ascending value. Suffixes of
/// that order are solved from the last element backwards, each suffix optimum
/// bounding the searches that follow. A node keeps the chosen elements, the pair
/// values they occupy, and the candidates still compatible with them; candidates
/// are greedily grouped into mutually conflicting classes, and the class count
/// bounds how many can still join. The greedy scan seeds the returned incumbent.
/// Every recursive call counts as one node; exceeding `node_budget` stops the
/// search and returns the incumbent with optimal = false.
MaxSubsetResult max_sidon_subset(const GroundSet& A, Mode mode, std::uint64_t node_budget);

/// Ascending scan keeping each element that creates no violation with those kept.
GroundSet greedy_sidon(const GroundSet& A, Mode mode);

struct DeletionResult {
    GroundSet subset;
    u128 violations = 0;      // unordered violations in the input
    double p = 1.0;           // inclusion probability used
    std::size_t sampled = 0;  // size of the p-random subset
    std::size_t deleted = 0;
};

/// Probabilistic deletion: with V = violation_count(A), keep each element with
/// p = min(1, (|A| / 2V)^(1/3)), then walk the surviving violations (ascending value,
/// pairs in index order) and delete the largest element of each one still intact.
DeletionResult deletion_sidon(const GroundSet& A, Mode mode, std::uint64_t seed);

/// Largest m with m(m+1)/2 <= pair_values.
u64 sidon_size_bound(u64 pair_values);

/// sidon_size_bound(|A.A|): an upper bound for the largest Sidon subset.
u64 sumset_cardinality_bound(const GroundSet& A, Mode mode);

} // namespace sidonlab
