#pragma once

#include "sidonlab/audit.hpp"
#include "sidonlab/ground_set.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sidonlab {

enum class Construction { PQ, TriplePrime, BW, Interval };

Construction parse_construction(std::string_view tag);
std::string_view construction_name(Construction c);
GroundSet build_construction(Construction c, u64 param);

/// Metrics understood by run_scaling.
inline constexpr std::string_view kMetricNames[] = {
    "sumset_size",  "productset_size", "c4free_capacity", "sidon_upper_bound",
    "exact_s_plus", "exact_s_times",   "energy_add",      "energy_mul",
};

/// exact_s_plus / exact_s_times refuse sets larger than this.
inline constexpr std::size_t kExactMetricCap = 64;
inline constexpr std::uint64_t kExactMetricBudget = 50'000'000;

struct ScalingRow {
    u64 n = 0;
    u64 set_size = 0;
    std::string metric;
    double value = 0.0;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r2 = 0.0;
    std::size_t rows_used = 0;
};

struct ScalingSeries {
    std::string construction;
    std::string fit_metric;
    std::vector<ScalingRow> rows;
    std::optional<FitResult> fit;
};

/// Least squares of ln(value) on ln(set_size) over the rows whose metric is
/// series.fit_metric (all rows when it is empty). Rows with value 0 or 1 are
/// dropped; negative values or set sizes are an error, as are fewer than three
/// usable rows.
FitResult fit_exponent(const ScalingSeries& series);

/// Evaluates every metric for every parameter (ascending) and fits `fit_metric`
/// (default: the first metric) against |A|.
ScalingSeries run_scaling(Construction c, std::vector<u64> params, const std::vector<std::string>& metrics,
                          std::string fit_metric = {});

double metric_value(Construction c, u64 param, const GroundSet& A, std::string_view metric);

struct KlrReport {
    u64 n = 0;
    double a = 0.0;
    u64 m = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<u64> s_plus;  // per trial
    bool all_optimal = true;
    double mean = 0.0;
    double median = 0.0;
    u64 min = 0;
    u64 max = 0;
    double mean_over_n_cbrt = 0.0;  // mean of s / n^(1/3)
    double mean_over_sqrt_m = 0.0;  // mean of s / m^(1/2)
};

inline constexpr u64 kKlrMaxN = 120;

/// s_+ of `trials` uniform m-subsets of [n], m = round(n^a), each solved exactly;
/// trial t uses sample seed derive_seed(seed, t).
KlrReport klr_experiment(u64 n, double a, std::size_t trials, std::uint64_t seed,
                         std::uint64_t budget = 100'000'000);

struct AuditEntry {
    std::string quantity;
    Quantity value;
    bool certified = false;
};

struct ConjectureAudit {
    std::string provenance;
    std::vector<AuditEntry> entries;
    const AuditEntry& at(std::string_view quantity) const;
};

/// Evidence table for one set: budgeted exact s_+, s_x, their upper bounds
/// (sum/product counts, C4 capacity for two-prime sets), greedy and deletion lower
/// bounds, randomized t searches, K = |A+A|/|A| and |A|^(2/3) / (K^(2/3) ln^(1/3)|A|).
ConjectureAudit conjecture_audit(const GroundSet& A, std::uint64_t budget, std::uint64_t seed);

} // namespace sidonlab
