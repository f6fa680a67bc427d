#pragma once

#include "sidonlab/audit.hpp"
#include "sidonlab/energy.hpp"
#include "sidonlab/ground_set.hpp"

#include <cstdint>
#include <vector>

namespace sidonlab {

/// A subset with energy strictly below 2|subset|^2 in `mode`.
struct LowEnergyResult {
    GroundSet subset;
    std::size_t size = 0;
    u64 energy = 0;
    Mode mode = Mode::Additive;
    bool optimal = false;
};

/// energy(A', mode) < 2|A'|^2.
bool low_energy_check(const GroundSet& subset, Mode mode);

/// Largest set size accepted by t_exact.
inline constexpr std::size_t kExhaustiveLimit = 24;

/// Exhaustive search, sizes from `size_cap` down, index-lexicographic within a size;
/// returns the first qualifying subset. optimal = (size_cap == |A|).
/// Throws DomainError when |A| > kExhaustiveLimit.
LowEnergyResult t_exact(const GroundSet& A, Mode mode, std::size_t size_cap);
inline LowEnergyResult t_exact(const GroundSet& A, Mode mode) { return t_exact(A, mode, A.size()); }

/// Repeatedly drops the element whose removal lowers the energy most (ties: the
/// larger element) until `target` elements remain.
GroundSet energy_peel(const GroundSet& A, Mode mode, std::size_t target);

struct TSearchResult {
    LowEnergyResult best;       // optimal is always false
    double best_p = 1.0;        // grid point that produced `best`
    std::size_t half_size = 0;  // |A'| after peeling
    std::vector<double> grid;
};

/// Inclusion probabilities tried per trial: 1, 2^-1, ..., 2^-floor(log2 |A|), and
/// 1 / (100 sqrt(C) |A|^(3/8)).
std::vector<double> t_search_grid(std::size_t set_size, double schedule_constant);

/// Randomized search for a large low-energy subset:
///  (i)  A' = energy_peel(A, mode, ceil(|A|/2));
///  (ii) per trial and grid point, a p-random subset of A' (stream
///       derive_seed(derive_seed(seed, trial), grid_index)) is peeled until it passes
///       the energy threshold, then extended by one ascending pass over A that adds
///       every element keeping it below threshold.
/// The largest result wins; ties go to the lexicographically smaller element list.
TSearchResult t_random_search(const GroundSet& A, Mode mode, std::size_t trials, std::uint64_t seed,
                              double schedule_constant = 1.0);

struct BwAuditReport {
    u64 N = 0;
    double C = 2.0;
    std::size_t subset_size = 0;  // ceil(C |A|^(5/6))
    std::vector<AuditCheck> checks;
    std::size_t samples = 0;
    std::size_t failing_both = 0;  // samples with E >= 2|A'|^2 in both modes
};

/// Audit of the upper-bound construction A = build_bw_set(N): productset size and
/// dyadic containment, the AP decomposition A = U A_j, and `samples` random subsets
/// of size ceil(C |A|^(5/6)) measured against both energy chains.
/// Throws DomainError if C |A|^(5/6) > |A|.
BwAuditReport bw_audit(u64 N, double C, std::size_t samples, std::uint64_t seed);

} // namespace sidonlab
