#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sidonlab/low_energy.hpp"
#include "sidonlab/rng.hpp"
#include "sidonlab/sidon.hpp"

#include <cmath>
#include <set>

using namespace sidonlab;

namespace {

GroundSet set_of(std::vector<u64> v) { return GroundSet::from_elements(std::move(v)); }

void recheck(const LowEnergyResult& r) {
    REQUIRE(r.subset.size() == r.size);
    CHECK(low_energy_check(r.subset, r.mode));
    CHECK(energy(r.subset, r.mode) == r.energy);
}

} // namespace

TEST_CASE("low_energy_check examples") {
    CHECK(low_energy_check(set_of({1, 2, 5, 7}), Mode::Additive));
    CHECK_FALSE(low_energy_check(build_interval(4), Mode::Additive));
    CHECK(energy(build_interval(4), Mode::Additive) == 44);
    CHECK(low_energy_check(set_of({1, 2, 4}), Mode::Additive));
    CHECK(energy(set_of({1, 2, 4}), Mode::Additive) == 15);
    CHECK_THROWS_AS(low_energy_check(GroundSet{}, Mode::Additive), DomainError);
}

TEST_CASE("t_exact examples") {
    const LowEnergyResult r = t_exact(build_interval(4), Mode::Additive);
    CHECK(r.size == 3);
    CHECK(r.optimal);
    CHECK(r.subset.values() == std::vector<u64>{1, 2, 4});
    recheck(r);

    const GroundSet sidon = set_of({1, 2, 5, 11, 19});
    const LowEnergyResult s = t_exact(sidon, Mode::Additive);
    CHECK(s.subset == sidon);
    CHECK(s.optimal);

    const GroundSet bw = build_bw_set(2);
    const LowEnergyResult plus = t_exact(bw, Mode::Additive);
    const LowEnergyResult times = t_exact(bw, Mode::Multiplicative);
    CHECK(plus.size == 5);
    CHECK(times.size == 5);
    CHECK(plus.subset.values() == std::vector<u64>{2, 4, 6, 12, 28});
    CHECK(times.subset.values() == std::vector<u64>{2, 4, 6, 10, 14});
    recheck(plus);
    recheck(times);

    const LowEnergyResult capped = t_exact(build_interval(10), Mode::Additive, 3);
    CHECK_FALSE(capped.optimal);
    CHECK(capped.size == 3);

    CHECK_THROWS_AS(t_exact(build_interval(25), Mode::Additive), DomainError);
    CHECK_THROWS_AS(t_exact(build_interval(5), Mode::Additive, 6), DomainError);
    CHECK_THROWS_AS(t_exact(build_interval(5), Mode::Additive, 0), DomainError);
}

TEST_CASE("t_exact agrees with exhaustive search and dominates s") {
    Xorshift64Star rng(8);
    for (int t = 0; t < 40; ++t) {
        std::set<u64> s;
        const std::size_t size = 3 + rng.below(10);
        while (s.size() < size) s.insert(1 + rng.below(t % 2 ? 30 : 120));
        const std::vector<u64> v(s.begin(), s.end());
        const GroundSet A = set_of(v);
        for (Mode mode : {Mode::Additive, Mode::Multiplicative}) {
            const bool mul = mode == Mode::Multiplicative;
            const LowEnergyResult r = t_exact(A, mode);
            CHECK(r.size == oracle::max_low_energy(v, mul));
            recheck(r);
            const MaxSubsetResult sidon = max_sidon_subset(A, mode, 10'000'000);
            REQUIRE(sidon.optimal);
            CHECK(r.size >= sidon.size);
        }
    }
}

TEST_CASE("energy peel") {
    const GroundSet A = build_interval(30);
    const GroundSet half = energy_peel(A, Mode::Additive, 15);
    CHECK(half.size() == 15);
    for (u64 x : half.elements()) CHECK(A.contains(x));
    CHECK(energy_peel(A, Mode::Additive, 30) == A);
    CHECK_THROWS_AS(energy_peel(A, Mode::Additive, 31), DomainError);
}

TEST_CASE("search grid") {
    const auto grid = t_search_grid(64, 1.0);
    REQUIRE(grid.size() == 8);
    CHECK(grid.front() == 1.0);
    CHECK(grid[6] == doctest::Approx(1.0 / 64));
    CHECK(grid.back() == doctest::Approx(1.0 / (100.0 * std::pow(64.0, 0.375))));
    CHECK_THROWS_AS(t_search_grid(64, 0.0), DomainError);
}

TEST_CASE("t_random_search: Sidon input comes back whole") {
    const GroundSet sidon = set_of({1, 2, 5, 11, 19, 32});
    const TSearchResult r = t_random_search(sidon, Mode::Additive, 3, 1);
    CHECK(r.best.subset == sidon);
    CHECK_FALSE(r.best.optimal);
    CHECK_THROWS_AS(t_random_search(sidon, Mode::Additive, 0, 1), DomainError);
}

TEST_CASE("t_random_search on [50] beats exhaustive 20-element sub-instances") {
    const GroundSet A = build_interval(50);
    const TSearchResult r = t_random_search(A, Mode::Additive, 200, 7);
    recheck(r.best);
    CHECK(r.half_size == 25);
    CHECK(r.best.size >= t_exact(build_interval(20), Mode::Additive).size);
    Xorshift64Star rng(7);
    for (int t = 0; t < 3; ++t) {
        const GroundSet sub = sample_subset(A, SampleSpec::fixed(20, rng.next()));
        CHECK(r.best.size >= t_exact(sub, Mode::Additive).size);
    }
    const TSearchResult again = t_random_search(A, Mode::Additive, 200, 7);
    CHECK(again.best.subset == r.best.subset);
    CHECK(again.best_p == r.best_p);
}

TEST_CASE("t_random_search on the n=3 multiplicative construction") {
    const GroundSet A = build_bw_set(3);
    const TSearchResult r = t_random_search(A, Mode::Multiplicative, 100, 3);
    recheck(r.best);
    MESSAGE("bw(3) multiplicative search size " << r.best.size << " vs 2|A|^(5/8) = "
                                                << 2.0 * std::pow(27.0, 0.625));
}

TEST_CASE("bw_audit structure checks") {
    for (u64 N = 2; N <= 6; ++N) {
        const BwAuditReport rep = bw_audit(N, 1.0, 0, 1);
        REQUIRE(rep.checks.size() == 2 + 2 * N);
        for (const auto& c : rep.checks) CHECK(c.pass == std::optional<bool>(true));
    }
    const BwAuditReport two = bw_audit(2, 1.0, 0, 1);
    CHECK(std::get<u64>(two.checks[0].lhs) == 30);
    CHECK(std::get<u64>(two.checks[0].rhs) == 128);
    CHECK(std::get<u64>(two.checks[3].lhs) == 7);
}

TEST_CASE("bw_audit samples") {
    CHECK_THROWS_AS(bw_audit(3, 2.0, 10, 1), DomainError);
    CHECK_THROWS_AS(bw_audit(1, 1.0, 10, 1), DomainError);
    const BwAuditReport rep = bw_audit(3, 1.5, 100, 42);
    CHECK(rep.subset_size == static_cast<std::size_t>(std::ceil(1.5 * std::pow(27.0, 5.0 / 6.0))));
    CHECK(rep.checks.size() == 2 + 2 * 3 + 4 * 100);
    for (const auto& c : rep.checks) {
        const bool lower_bound = c.check.find("cs_bound") != std::string::npos || c.check.find("AP_chain") != std::string::npos;
        if (lower_bound) CHECK(c.pass == std::optional<bool>(true));
    }
    CHECK(rep.failing_both <= rep.samples);
    MESSAGE("bw(3), C=1.5: " << rep.failing_both << " of " << rep.samples << " samples high in both modes");
}
