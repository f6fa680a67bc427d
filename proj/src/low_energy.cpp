#include "sidonlab/low_energy.hpp"

#include "sidonlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace sidonlab {

bool low_energy_check(const GroundSet& subset, Mode mode) {
    if (subset.empty()) throw DomainError("low-energy check needs a nonempty set");
    const u128 m = subset.size();
    return static_cast<u128>(energy(subset, mode)) < 2 * m * m;
}

namespace {

LowEnergyResult make_result(const GroundSet& A, std::vector<std::size_t> idx, u128 e, Mode mode, bool optimal,
                            const std::string& tag) {
    std::sort(idx.begin(), idx.end());
    LowEnergyResult r;
    r.subset = A.subset_by_index(idx, tag + " " + std::string(mode_name(mode)) + " of " + A.provenance());
    r.size = idx.size();
    r.energy = narrow_u64(e);
    r.mode = mode;
    r.optimal = optimal;
    return r;
}

} // namespace

LowEnergyResult t_exact(const GroundSet& A, Mode mode, std::size_t size_cap) {
    if (A.empty()) throw DomainError("t_exact needs a nonempty set");
    if (A.size() > kExhaustiveLimit) {
        throw DomainError("exhaustive search is limited to " + std::to_string(kExhaustiveLimit) + " elements, got " +
                          std::to_string(A.size()));
    }
    if (size_cap < 1 || size_cap > A.size()) throw DomainError("size cap must lie in [1, |A|]");
    const PairTable table(A, mode);
    SubsetEnergy sub(table);
    const std::size_t n = A.size();
    std::vector<std::size_t> found;
    u128 found_energy = 0;

    std::function<bool(std::size_t, std::size_t)> walk = [&](std::size_t start, std::size_t k) -> bool {
        if (sub.size() == k) {
            if (sub.low_energy()) {
                found = sub.members();
                found_energy = sub.energy();
                return true;
            }
            return false;
        }
        for (std::size_t i = start; i + (k - sub.size()) <= n; ++i) {
            sub.add(i);
            const bool hit = walk(i + 1, k);
            sub.remove(i);
            if (hit) return true;
        }
        return false;
    };
    for (std::size_t k = size_cap; k >= 1; --k) {
        if (walk(0, k)) break;
    }
    return make_result(A, found, found_energy, mode, size_cap == A.size(), "t_exact");
}

namespace {

// Index of the member whose removal lowers the energy most; ties to the larger index.
std::size_t heaviest_member(const SubsetEnergy& sub) {
    std::size_t best = sub.members().front();
    u128 best_delta = 0;
    bool first = true;
    for (std::size_t i : sub.members()) {
        const u128 d = sub.remove_delta(i);
        if (first || d > best_delta || (d == best_delta && i > best)) {
            best = i;
            best_delta = d;
            first = false;
        }
    }
    return best;
}

} // namespace

GroundSet energy_peel(const GroundSet& A, Mode mode, std::size_t target) {
    if (A.empty()) throw DomainError("energy peel needs a nonempty set");
    if (target > A.size()) throw DomainError("peel target exceeds set size");
    const PairTable table(A, mode);
    SubsetEnergy sub(table);
    for (std::size_t i = 0; i < A.size(); ++i) sub.add(i);
    while (sub.size() > target) sub.remove(heaviest_member(sub));
    std::vector<std::size_t> idx = sub.members();
    std::sort(idx.begin(), idx.end());
    return A.subset_by_index(idx, "energy peel " + std::string(mode_name(mode)) + " of " + A.provenance());
}

std::vector<double> t_search_grid(std::size_t set_size, double schedule_constant) {
    if (!(schedule_constant > 0.0)) throw DomainError("schedule constant must be positive");
    std::vector<double> grid{1.0};
    const auto levels = set_size >= 2 ? static_cast<int>(std::floor(std::log2(static_cast<double>(set_size)))) : 0;
    for (int k = 1; k <= levels; ++k) grid.push_back(std::ldexp(1.0, -k));
    grid.push_back(1.0 / (100.0 * std::sqrt(schedule_constant) *
                          std::pow(static_cast<double>(std::max<std::size_t>(set_size, 1)), 3.0 / 8.0)));
    return grid;
}

TSearchResult t_random_search(const GroundSet& A, Mode mode, std::size_t trials, std::uint64_t seed,
                              double schedule_constant) {
    if (A.empty()) throw DomainError("t_random_search needs a nonempty set");
    if (trials < 1) throw DomainError("trials must be at least 1");
    TSearchResult out;
    out.grid = t_search_grid(A.size(), schedule_constant);

    const PairTable table(A, mode);
    const std::size_t half = (A.size() + 1) / 2;
    const GroundSet peeled = energy_peel(A, mode, half);
    out.half_size = peeled.size();
    std::vector<std::size_t> peeled_idx;
    for (u64 v : peeled.elements()) {
        peeled_idx.push_back(
            static_cast<std::size_t>(std::lower_bound(A.values().begin(), A.values().end(), v) - A.values().begin()));
    }

    std::vector<std::size_t> best;
    u128 best_energy = 0;
    double best_p = 1.0;
    SubsetEnergy sub(table);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(seed, t);
        for (std::size_t g = 0; g < out.grid.size(); ++g) {
            Xorshift64Star rng(derive_seed(trial_seed, g));
            sub.clear();
            for (std::size_t i : peeled_idx) {
                if (rng.bernoulli(out.grid[g])) sub.add(i);
            }
            while (sub.size() > 0 && !sub.low_energy()) sub.remove(heaviest_member(sub));
            for (std::size_t x = 0; x < A.size(); ++x) {
                if (sub.contains(x)) continue;
                const u128 m = sub.size() + 1;
                if (sub.energy() + sub.add_delta(x) < 2 * m * m) sub.add(x);
            }
            std::vector<std::size_t> cand = sub.members();
            std::sort(cand.begin(), cand.end());
            if (cand.size() > best.size() || (cand.size() == best.size() && cand < best)) {
                best = cand;
                best_energy = sub.energy();
                best_p = out.grid[g];
            }
        }
    }
    out.best = make_result(A, best, best_energy, mode, false, "t_search");
    out.best_p = best_p;
    return out;
}

BwAuditReport bw_audit(u64 N, double C, std::size_t samples, std::uint64_t seed) {
    if (N < 2) throw DomainError("bw audit needs N >= 2");
    if (!(C > 0.0)) throw DomainError("C must be positive");
    const GroundSet A = build_bw_set(N);
    const double size_bound = C * std::pow(static_cast<double>(A.size()), 5.0 / 6.0);
    if (size_bound > static_cast<double>(A.size())) {
        throw DomainError("C*|A|^(5/6) = " + std::to_string(size_bound) + " exceeds |A| = " + std::to_string(A.size()));
    }
    BwAuditReport rep;
    rep.N = N;
    rep.C = C;
    rep.samples = samples;
    rep.subset_size = static_cast<std::size_t>(std::ceil(size_bound));

    // (i) productset
    const GroundSet AA = combined_set(A, Mode::Multiplicative);
    const u64 four_n5 = checked_mul(4, checked_mul(checked_mul(N * N, N * N), N));
    rep.checks.push_back({"productset_size_le_4N^5", static_cast<u64>(AA.size()), four_n5, AA.size() <= four_n5});
    u64 inside = 0;
    for (u64 x : AA.elements()) {
        const u64 j = static_cast<u64>(__builtin_ctzll(x));
        const u64 i = ((x >> j) + 1) / 2;
        if (j >= 1 && j <= 2 * N && i >= 1 && i <= 2 * N * N * N * N) ++inside;
    }
    rep.checks.push_back({"productset_in_dyadic_box_2N^4_by_2N", inside, static_cast<u64>(AA.size()),
                          inside == AA.size()});

    // (ii) AP decomposition
    const u64 len = N * N;
    std::vector<std::vector<std::size_t>> block_of(N + 1);
    for (std::size_t k = 0; k < A.size(); ++k) block_of[A.label(k)[1]].push_back(k);
    for (u64 j = 1; j <= N; ++j) {
        std::vector<u64> vals;
        for (std::size_t k : block_of[j]) vals.push_back(A[k]);
        bool ap = vals.size() == len;
        for (std::size_t t = 1; ap && t < vals.size(); ++t) ap = vals[t] - vals[t - 1] == (u64{1} << (j + 1));
        rep.checks.push_back({"A_" + std::to_string(j) + "_is_AP_of_length_N^2", static_cast<u64>(vals.size()), len, ap});
        const GroundSet Aj = GroundSet::from_elements(vals, "A_" + std::to_string(j));
        const u64 sums = combined_size(Aj, Mode::Additive);
        rep.checks.push_back({"A_" + std::to_string(j) + "_sumset_size_eq_2N^2-1", sums, 2 * len - 1, sums == 2 * len - 1});
    }

    // (iii) sampled subsets
    for (std::size_t s = 0; s < samples; ++s) {
        const GroundSet sub = sample_subset(A, SampleSpec::fixed(rep.subset_size, derive_seed(seed, s)));
        const u128 m = sub.size();
        const u64 two_m2 = narrow_u64(2 * m * m);
        const std::string tag = "sample_" + std::to_string(s) + "_";

        const u64 e_mul = energy(sub, Mode::Multiplicative);
        const Rational cs_mul(m * m * m * m, combined_size(sub, Mode::Multiplicative));
        rep.checks.push_back({tag + "E_mul_ge_cs_bound", e_mul, cs_mul, Rational(e_mul) >= cs_mul});
        const bool mul_high = e_mul >= two_m2;
        rep.checks.push_back({tag + "E_mul_ge_2m^2", e_mul, two_m2, mul_high});

        const double threshold = 2.0 * std::cbrt(static_cast<double>(m)) * std::pow(static_cast<double>(N), 2.0 / 3.0);
        std::vector<u64> per_block(N + 1, 0);
        for (u64 v : sub.elements()) ++per_block[A.label_of(v)[1]];
        u128 fourth = 0;
        for (u64 j = 1; j <= N; ++j) {
            if (static_cast<double>(per_block[j]) >= threshold) {
                const u128 c = per_block[j];
                fourth += c * c * c * c;
            }
        }
        const u64 e_add = energy(sub, Mode::Additive);
        const Rational chain(fourth, 2 * len - 1);
        rep.checks.push_back({tag + "E_add_ge_AP_chain", e_add, chain, Rational(e_add) >= chain});
        const bool add_high = e_add >= two_m2;
        rep.checks.push_back({tag + "E_add_ge_2m^2", e_add, two_m2, add_high});
        if (mul_high && add_high) ++rep.failing_both;
    }
    return rep;
}

} // namespace sidonlab
