#include "sidonlab/scaling.hpp"

#include "sidonlab/energy.hpp"
#include "sidonlab/low_energy.hpp"
#include "sidonlab/parallel.hpp"
#include "sidonlab/product_graph.hpp"
#include "sidonlab/rng.hpp"
#include "sidonlab/sidon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace sidonlab {

Construction parse_construction(std::string_view tag) {
    if (tag == "pq") return Construction::PQ;
    if (tag == "triple") return Construction::TriplePrime;
    if (tag == "bw") return Construction::BW;
    if (tag == "interval") return Construction::Interval;
    throw DomainError("unknown construction '" + std::string(tag) + "' (expected pq, triple, bw or interval)");
}

std::string_view construction_name(Construction c) {
    switch (c) {
    case Construction::PQ: return "pq";
    case Construction::TriplePrime: return "triple";
    case Construction::BW: return "bw";
    case Construction::Interval: return "interval";
    }
    return "?";
}

GroundSet build_construction(Construction c, u64 param) {
    switch (c) {
    case Construction::PQ: return build_pq_set(param);
    case Construction::TriplePrime: return build_triple_prime_set(param);
    case Construction::BW: return build_bw_set(param);
    case Construction::Interval: return build_interval(param);
    }
    throw DomainError("unknown construction");
}

namespace {

double exact_sidon_metric(const GroundSet& A, Mode mode) {
    if (A.size() > kExactMetricCap) {
        throw DomainError("exact Sidon metrics are limited to sets of size " + std::to_string(kExactMetricCap) +
                          ", got " + std::to_string(A.size()));
    }
    const MaxSubsetResult r = max_sidon_subset(A, mode, kExactMetricBudget);
    if (!r.optimal) throw DomainError("exact Sidon metric not certified within the node budget");
    return static_cast<double>(r.size);
}

} // namespace

double metric_value(Construction c, u64 /*param*/, const GroundSet& A, std::string_view metric) {
    if (metric == "sumset_size") return static_cast<double>(combined_size(A, Mode::Additive));
    if (metric == "productset_size") return static_cast<double>(combined_size(A, Mode::Multiplicative));
    if (metric == "sidon_upper_bound") return static_cast<double>(sumset_cardinality_bound(A, Mode::Additive));
    if (metric == "energy_add") return static_cast<double>(energy(A, Mode::Additive));
    if (metric == "energy_mul") return static_cast<double>(energy(A, Mode::Multiplicative));
    if (metric == "exact_s_plus") return exact_sidon_metric(A, Mode::Additive);
    if (metric == "exact_s_times") return exact_sidon_metric(A, Mode::Multiplicative);
    if (metric == "c4free_capacity") {
        if (c != Construction::PQ) throw DomainError("c4free_capacity is defined for the pq construction only");
        const ProductGraph G = graph_from_pq(A, std::vector<u64>{});
        return static_cast<double>(c4free_capacity(G.left.size(), G.right.size()));
    }
    throw DomainError("unknown metric '" + std::string(metric) + "'");
}

FitResult fit_exponent(const ScalingSeries& series) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const ScalingRow& row : series.rows) {
        if (!series.fit_metric.empty() && row.metric != series.fit_metric) continue;
        if (row.value < 0.0 || row.set_size == 0) {
            throw DomainError("log-log fit needs positive set sizes and nonnegative metric values");
        }
        if (row.value == 0.0 || row.value == 1.0) continue;
        xs.push_back(std::log(static_cast<double>(row.set_size)));
        ys.push_back(std::log(row.value));
    }
    if (xs.size() < 3) throw DomainError("log-log fit needs at least 3 usable rows, got " + std::to_string(xs.size()));
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) throw DomainError("log-log fit needs at least two distinct set sizes");
    FitResult f;
    f.rows_used = xs.size();
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (f.intercept + f.slope * xs[i]);
        sse += r * r;
    }
    f.slope_stderr = xs.size() > 2 ? std::sqrt(sse / (n - 2.0) / sxx) : 0.0;
    f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    return f;
}

ScalingSeries run_scaling(Construction c, std::vector<u64> params, const std::vector<std::string>& metrics,
                          std::string fit_metric) {
    if (metrics.empty()) throw DomainError("run_scaling needs at least one metric");
    for (const std::string& m : metrics) {
        if (std::find(std::begin(kMetricNames), std::end(kMetricNames), m) == std::end(kMetricNames)) {
            throw DomainError("unknown metric '" + m + "'");
        }
    }
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());

    ScalingSeries s;
    s.construction = std::string(construction_name(c));
    s.fit_metric = fit_metric.empty() ? metrics.front() : std::move(fit_metric);
    if (std::find(metrics.begin(), metrics.end(), s.fit_metric) == metrics.end()) {
        throw DomainError("fit metric '" + s.fit_metric + "' is not among the requested metrics");
    }
    std::vector<std::vector<ScalingRow>> per_param(params.size());
    parallel_for(params.size(), [&](std::size_t i) {
        const GroundSet A = build_construction(c, params[i]);
        for (const std::string& m : metrics) {
            per_param[i].push_back({params[i], A.size(), m, metric_value(c, params[i], A, m)});
        }
    });
    for (auto& rows : per_param) {
        for (auto& r : rows) s.rows.push_back(std::move(r));
    }
    std::size_t fit_rows = 0;
    for (const auto& r : s.rows) fit_rows += r.metric == s.fit_metric && r.value != 0.0 && r.value != 1.0;
    if (fit_rows >= 3) s.fit = fit_exponent(s);
    return s;
}

KlrReport klr_experiment(u64 n, double a, std::size_t trials, std::uint64_t seed, std::uint64_t budget) {
    if (n < 1 || n > kKlrMaxN) {
        throw DomainError("klr experiment needs 1 <= n <= " + std::to_string(kKlrMaxN) + " for certified solves");
    }
    if (!(a >= 1.0 / 3.0 - 1e-9 && a <= 1.0 + 1e-12)) throw DomainError("exponent a must lie in [1/3, 1]");
    if (trials < 1) throw DomainError("trials must be at least 1");
    KlrReport rep;
    rep.n = n;
    rep.a = a;
    rep.trials = trials;
    rep.seed = seed;
    rep.m = static_cast<u64>(std::llround(std::pow(static_cast<double>(n), a)));
    if (rep.m > n) throw DomainError("round(n^a) exceeds n");
    const GroundSet ground = build_interval(n);

    rep.s_plus.assign(trials, 0);
    std::vector<char> optimal(trials, 1);
    parallel_for(trials, [&](std::size_t t) {
        const GroundSet B = sample_subset(ground, SampleSpec::fixed(rep.m, derive_seed(seed, t)));
        if (B.empty()) return;
        const MaxSubsetResult r = max_sidon_subset(B, Mode::Additive, budget);
        rep.s_plus[t] = r.size;
        optimal[t] = r.optimal;
    });
    rep.all_optimal = std::all_of(optimal.begin(), optimal.end(), [](char c) { return c != 0; });

    std::vector<u64> sorted = rep.s_plus;
    std::sort(sorted.begin(), sorted.end());
    rep.min = sorted.front();
    rep.max = sorted.back();
    const std::size_t h = sorted.size() / 2;
    rep.median = sorted.size() % 2 ? static_cast<double>(sorted[h])
                                   : 0.5 * (static_cast<double>(sorted[h - 1]) + static_cast<double>(sorted[h]));
    double total = 0.0;
    for (u64 v : rep.s_plus) total += static_cast<double>(v);
    rep.mean = total / static_cast<double>(trials);
    rep.mean_over_n_cbrt = rep.mean / std::cbrt(static_cast<double>(n));
    rep.mean_over_sqrt_m = rep.m > 0 ? rep.mean / std::sqrt(static_cast<double>(rep.m)) : 0.0;
    return rep;
}

const AuditEntry& ConjectureAudit::at(std::string_view quantity) const {
    for (const AuditEntry& e : entries) {
        if (e.quantity == quantity) return e;
    }
    throw DomainError("audit has no entry '" + std::string(quantity) + "'");
}

namespace {

bool two_prime_labelled(const GroundSet& A) {
    if (A.label_kind() != LabelKind::PrimeFactors) return false;
    for (std::size_t k = 0; k < A.size(); ++k) {
        if (A.label(k).size() != 2 || A.label(k)[0] >= A.label(k)[1]) return false;
    }
    // Left and right primes must not overlap for the bipartite view.
    std::set<u64> left;
    std::set<u64> right;
    for (std::size_t k = 0; k < A.size(); ++k) {
        left.insert(A.label(k)[0]);
        right.insert(A.label(k)[1]);
    }
    for (u64 p : left) {
        if (right.count(p)) return false;
    }
    return true;
}

double median_of(std::vector<u64> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? static_cast<double>(v[h]) : 0.5 * static_cast<double>(v[h - 1] + v[h]);
}

} // namespace

ConjectureAudit conjecture_audit(const GroundSet& A, std::uint64_t budget, std::uint64_t seed) {
    if (A.empty()) throw DomainError("audit needs a nonempty set");
    constexpr std::size_t kDeletionRuns = 21;
    constexpr std::size_t kSearchTrials = 20;

    ConjectureAudit out;
    out.provenance = A.provenance();
    auto add = [&](std::string name, Quantity v, bool certified) {
        out.entries.push_back({std::move(name), std::move(v), certified});
    };
    const u64 size = A.size();
    add("set_size", size, true);

    const MaxSubsetResult sp = max_sidon_subset(A, Mode::Additive, budget);
    const MaxSubsetResult sm = max_sidon_subset(A, Mode::Multiplicative, budget);
    add("s_plus", static_cast<u64>(sp.size), sp.optimal);
    add("s_times", static_cast<u64>(sm.size), sm.optimal);
    add("max_s", static_cast<u64>(std::max(sp.size, sm.size)), sp.optimal && sm.optimal);

    const u64 sums = combined_size(A, Mode::Additive);
    const u64 products = combined_size(A, Mode::Multiplicative);
    add("s_plus_upper_sumset", sidon_size_bound(sums), true);
    add("s_times_upper_productset", sidon_size_bound(products), true);
    if (two_prime_labelled(A)) {
        const ProductGraph G = graph_from_pq(A);
        add("s_times_upper_c4_capacity", c4free_capacity(G.left.size(), G.right.size()), true);
    }

    add("s_plus_lower_greedy", static_cast<u64>(greedy_sidon(A, Mode::Additive).size()), true);
    add("s_times_lower_greedy", static_cast<u64>(greedy_sidon(A, Mode::Multiplicative).size()), true);
    for (Mode mode : {Mode::Additive, Mode::Multiplicative}) {
        std::vector<u64> sizes;
        for (std::size_t r = 0; r < kDeletionRuns; ++r) {
            sizes.push_back(deletion_sidon(A, mode, derive_seed(seed, r)).subset.size());
        }
        const std::string tag = mode == Mode::Additive ? "s_plus" : "s_times";
        add(tag + "_deletion_median", median_of(sizes), false);
        add(tag + "_deletion_max", *std::max_element(sizes.begin(), sizes.end()), true);
    }

    const TSearchResult tp = t_random_search(A, Mode::Additive, kSearchTrials, derive_seed(seed, 1000));
    const TSearchResult tm = t_random_search(A, Mode::Multiplicative, kSearchTrials, derive_seed(seed, 1001));
    add("t_plus_search", static_cast<u64>(tp.best.size), false);
    add("t_times_search", static_cast<u64>(tm.best.size), false);

    const Rational K(sums, size);
    add("K_sumset_ratio", K, true);
    if (size >= 2) {
        const double rhs = std::pow(static_cast<double>(size), 2.0 / 3.0) /
                           (std::pow(K.to_double(), 2.0 / 3.0) * std::cbrt(std::log(static_cast<double>(size))));
        add("s_times_small_doubling_bound", rhs, true);
        add("s_times_over_small_doubling_bound", static_cast<double>(sm.size) / rhs, sm.optimal);
    }
    return out;
}

} // namespace sidonlab
