#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sidonlab/energy.hpp"
#include "sidonlab/scaling.hpp"
#include "sidonlab/sidon.hpp"

#include <cmath>

using namespace sidonlab;

namespace {

ScalingSeries synthetic(double exponent, double scale) {
    ScalingSeries s;
    s.fit_metric = "y";
    for (u64 x : {3, 7, 20, 55, 130, 999}) {
        s.rows.push_back({x, x, "y", scale * std::pow(static_cast<double>(x), exponent)});
    }
    return s;
}

double number(const Quantity& q) { return to_double(q); }

} // namespace

TEST_CASE("construction tags") {
    CHECK(parse_construction("pq") == Construction::PQ);
    CHECK(parse_construction("triple") == Construction::TriplePrime);
    CHECK(parse_construction("bw") == Construction::BW);
    CHECK(parse_construction("interval") == Construction::Interval);
    CHECK_THROWS_AS(parse_construction("PQ"), DomainError);
    for (auto c : {Construction::PQ, Construction::TriplePrime, Construction::BW, Construction::Interval})
        CHECK(parse_construction(construction_name(c)) == c);
}

TEST_CASE("fit recovers synthetic power laws") {
    for (double e : {1.0, 2.0, 0.5, 2.0 / 3.0}) {
        const FitResult f = fit_exponent(synthetic(e, 3.0));
        CHECK(std::abs(f.slope - e) < 1e-9);
        CHECK(std::abs(f.intercept - std::log(3.0)) < 1e-9);
        CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.slope_stderr < 1e-9);
        CHECK(f.rows_used == 6);
    }
    ScalingSeries s = synthetic(1.0, 1.0);
    const FitResult a = fit_exponent(s);
    const FitResult b = fit_exponent(s);
    CHECK(a.slope == b.slope);
    CHECK(a.intercept == b.intercept);
}

TEST_CASE("fit input rules") {
    ScalingSeries s = synthetic(1.0, 1.0);
    s.rows.push_back({1, 1, "y", 1.0});
    s.rows.push_back({2, 2, "y", 0.0});
    s.rows.push_back({2, 2, "other", 77.0});
    CHECK(fit_exponent(s).rows_used == 6);
    CHECK(std::abs(fit_exponent(s).slope - 1.0) < 1e-9);

    ScalingSeries neg = synthetic(1.0, 1.0);
    neg.rows.push_back({5, 5, "y", -2.0});
    CHECK_THROWS_AS(fit_exponent(neg), DomainError);

    ScalingSeries few;
    few.rows = {{2, 2, "y", 2.0}, {4, 4, "y", 4.0}};
    CHECK_THROWS_AS(fit_exponent(few), DomainError);
    CHECK_THROWS_AS(fit_exponent(ScalingSeries{}), DomainError);
}

TEST_CASE("run_scaling on intervals") {
    const ScalingSeries s =
        run_scaling(Construction::Interval, {40, 10, 20, 80, 160}, {"energy_add", "sumset_size"});
    REQUIRE(s.fit.has_value());
    CHECK(s.fit_metric == "energy_add");
    CHECK(s.rows.size() == 10);
    CHECK(s.rows.front().n == 10);
    CHECK(s.fit->slope >= 2.9);
    CHECK(s.fit->slope <= 3.1);
    for (const auto& r : s.rows) {
        const double N = static_cast<double>(r.n);
        if (r.metric == "energy_add") CHECK(r.value == (2 * N * N * N + N) / 3);
        if (r.metric == "sumset_size") CHECK(r.value == 2 * N - 1);
    }
    const ScalingSeries again =
        run_scaling(Construction::Interval, {10, 20, 40, 80, 160}, {"energy_add", "sumset_size"});
    CHECK(again.fit->slope == s.fit->slope);
    CHECK(again.fit->intercept == s.fit->intercept);

    const ScalingSeries two = run_scaling(Construction::Interval, {10, 20}, {"sumset_size"});
    CHECK_FALSE(two.fit.has_value());
}

TEST_CASE("run_scaling refusals") {
    CHECK_THROWS_AS(run_scaling(Construction::Interval, {10}, {"nope"}), DomainError);
    CHECK_THROWS_AS(run_scaling(Construction::Interval, {10}, {}), DomainError);
    CHECK_THROWS_AS(run_scaling(Construction::Interval, {10}, {"c4free_capacity"}), DomainError);
    CHECK_THROWS_AS(run_scaling(Construction::Interval, {65}, {"exact_s_plus"}), DomainError);
    CHECK_THROWS_AS(run_scaling(Construction::Interval, {10}, {"sumset_size"}, "energy_mul"), DomainError);
    CHECK_THROWS_AS(run_scaling(Construction::PQ, {1}, {"sumset_size"}), DomainError);
}

TEST_CASE("pq scaling metrics") {
    const ScalingSeries s = run_scaling(Construction::PQ, {20, 40, 60, 80, 100},
                                        {"c4free_capacity", "sidon_upper_bound", "sumset_size"},
                                        "c4free_capacity");
    REQUIRE(s.fit.has_value());
    for (const auto& r : s.rows) {
        const double n = static_cast<double>(r.n);
        if (r.metric == "sumset_size") CHECK(r.value <= 2 * n * n * n / std::log(n));
    }
    CHECK(s.fit->slope > 0.5);
    CHECK(s.fit->slope < 0.8);
}

TEST_CASE("exact metrics match the solver") {
    const ScalingSeries s = run_scaling(Construction::Interval, {5, 7, 12, 20}, {"exact_s_plus"});
    const std::vector<double> expected = {3, 4, 5, 6};
    for (std::size_t i = 0; i < 4; ++i) CHECK(s.rows[i].value == expected[i]);
}

TEST_CASE("klr experiment") {
    const KlrReport full = klr_experiment(20, 1.0, 5, 9);
    CHECK(full.m == 20);
    CHECK(full.min == full.max);
    CHECK(full.min == 6);
    CHECK(full.all_optimal);

    const KlrReport small = klr_experiment(100, 1.0 / 3.0, 40, 11);
    CHECK(small.m == 5);
    CHECK(small.all_optimal);
    for (u64 s : small.s_plus) {
        CHECK(s >= 3);
        CHECK(s <= 5);
    }
    CHECK(small.mean_over_sqrt_m == doctest::Approx(small.mean / std::sqrt(5.0)));

    const KlrReport repeat = klr_experiment(100, 1.0 / 3.0, 40, 11);
    CHECK(repeat.s_plus == small.s_plus);

    CHECK_THROWS_AS(klr_experiment(121, 0.5, 1, 1), DomainError);
    CHECK_THROWS_AS(klr_experiment(100, 0.2, 1, 1), DomainError);
    CHECK_THROWS_AS(klr_experiment(100, 0.5, 0, 1), DomainError);
}

TEST_CASE("klr regimes") {
    const KlrReport high = klr_experiment(100, 0.9, 4, 3);
    const KlrReport mid = klr_experiment(100, 0.5, 4, 3);
    CHECK(high.all_optimal);
    CHECK(mid.all_optimal);
    CHECK(high.mean >= mid.mean);
    MESSAGE("a=0.9: s/n^(1/3) " << high.mean_over_n_cbrt << ", s/m^(1/2) " << high.mean_over_sqrt_m);
    MESSAGE("a=0.5: s/n^(1/3) " << mid.mean_over_n_cbrt << ", s/m^(1/2) " << mid.mean_over_sqrt_m);
}

TEST_CASE("conjecture audit of the n=6 construction is certified") {
    const GroundSet A = build_pq_set(6);
    REQUIRE(A.size() == 15);
    const ConjectureAudit audit = conjecture_audit(A, 10'000'000, 5);
    CHECK(audit.at("s_plus").certified);
    CHECK(audit.at("s_times").certified);
    CHECK(audit.at("max_s").certified);
    const double sp = number(audit.at("s_plus").value);
    const double sm = number(audit.at("s_times").value);
    CHECK(sp == static_cast<double>(max_sidon_subset(A, Mode::Additive, 10'000'000).size));
    CHECK(number(audit.at("max_s").value) == std::max(sp, sm));

    CHECK(number(audit.at("s_plus_lower_greedy").value) <= sp);
    CHECK(number(audit.at("s_times_lower_greedy").value) <= sm);
    CHECK(number(audit.at("s_plus_deletion_max").value) <= sp);
    CHECK(number(audit.at("s_times_deletion_max").value) <= sm);
    CHECK(number(audit.at("s_plus_deletion_median").value) <= sp);
    CHECK(number(audit.at("s_times_deletion_median").value) <= sm);
    CHECK(sp <= number(audit.at("s_plus_upper_sumset").value));
    CHECK(sm <= number(audit.at("s_times_upper_productset").value));
    CHECK(sm <= number(audit.at("s_times_upper_c4_capacity").value));
    CHECK(number(audit.at("t_plus_search").value) >= sp);
    CHECK(number(audit.at("t_times_search").value) >= sm);
    CHECK(number(audit.at("K_sumset_ratio").value) ==
          doctest::Approx(static_cast<double>(combined_size(A, Mode::Additive)) / 15.0));
    CHECK_THROWS_AS(audit.at("nope"), DomainError);
}

TEST_CASE("conjecture audit of a Sidon set") {
    const GroundSet A = GroundSet::from_elements({1, 2, 5, 11, 19, 32});
    const ConjectureAudit audit = conjecture_audit(A, 1'000'000, 1);
    CHECK(audit.at("s_plus").certified);
    CHECK(number(audit.at("max_s").value) == 6);
    CHECK(number(audit.at("s_plus_deletion_median").value) == 6);
}

TEST_CASE("conjecture audit under a tight budget on the n=20 construction") {
    const GroundSet A = build_pq_set(20);
    const ConjectureAudit audit = conjecture_audit(A, 20'000, 2);
    const double sp = number(audit.at("s_plus").value);
    const double sm = number(audit.at("s_times").value);
    CHECK(number(audit.at("s_plus_lower_greedy").value) <= sp);
    CHECK(number(audit.at("s_times_lower_greedy").value) <= sm);
    CHECK(sp <= number(audit.at("s_plus_upper_sumset").value));
    CHECK(sm <= number(audit.at("s_times_upper_c4_capacity").value));
    CHECK(number(audit.at("s_times_deletion_max").value) <= number(audit.at("s_times_upper_c4_capacity").value));
}
