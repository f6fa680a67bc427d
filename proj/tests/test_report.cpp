#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sidonlab/report.hpp"

#include <sstream>

using namespace sidonlab;

TEST_CASE("energy report of {1,2}") {
    const GroundSet A = GroundSet::from_elements({1, 2});
    const Json j = to_json(energy_report(A));
    CHECK(j["energy_add"] == 6);
    CHECK(j["energy_mul"] == 6);
    CHECK(j["nontrivial_add"] == 0);
    CHECK(j["cs_lower_add"] == "16/3");
    const std::string text = emit_report(energy_report(A), Format::Json);
    CHECK(text.back() == '\n');
    CHECK(text.find("\"set_size\": 2") != std::string::npos);
    CHECK(text.find("\"set_size\"") < text.find("\"energy_add\""));
    const std::string csv = emit_report(energy_report(A), Format::Csv);
    CHECK(csv.rfind("key,value\nset_size,2\nenergy_add,6\n", 0) == 0);
}

TEST_CASE("formats") {
    CHECK(parse_format("json") == Format::Json);
    CHECK(parse_format("csv") == Format::Csv);
    CHECK_THROWS_AS(parse_format("xml"), DomainError);
    CHECK(format_float(1.0 / 3.0) == "0.333333333333");
    CHECK(format_float(2.0) == "2");
    CHECK(float_json(1.0 / 3.0).dump() == "0.333333333333");
    CHECK(float_json(std::nan("")).is_null());
    CHECK(to_json(Quantity{Rational(6, 4)}).dump() == "\"3/2\"");
    CHECK(to_json(Quantity{u64{7}}).dump() == "7");
}

TEST_CASE("identical input gives byte-identical output") {
    const GroundSet A = build_pq_set(8);
    for (Format f : {Format::Json, Format::Csv}) {
        CHECK(emit_report(energy_report(A), f) == emit_report(energy_report(A), f));
        CHECK(emit_report(deletion_sidon(A, Mode::Multiplicative, 4), f) ==
              emit_report(deletion_sidon(A, Mode::Multiplicative, 4), f));
        CHECK(emit_report(t_random_search(A, Mode::Additive, 5, 4), f) ==
              emit_report(t_random_search(A, Mode::Additive, 5, 4), f));
        CHECK(emit_report(conjecture_audit(A, 100000, 4), f) == emit_report(conjecture_audit(A, 100000, 4), f));
    }
}

TEST_CASE("audit checks serialize one object per check") {
    ProductGraph G{{2, 3}, {5, 7}, {{2, 5}, {2, 7}, {3, 5}, {3, 7}}};
    const Json j = to_json(cs_chain_audit(G));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    for (const auto& c : j) {
        CHECK(c.contains("check"));
        CHECK(c.contains("lhs"));
        CHECK(c.contains("rhs"));
        CHECK(c.contains("pass"));
    }
    CHECK(j[2]["pass"].is_null());
    const std::string csv = to_csv(cs_chain_audit(G));
    CHECK(csv.rfind("check,lhs,rhs,pass\n", 0) == 0);
    CHECK(csv.find("codegrees_le_P_squared,4,4,skipped") != std::string::npos);
}

TEST_CASE("scaling csv") {
    const ScalingSeries s = run_scaling(Construction::Interval, {10, 20, 40}, {"energy_add"});
    const std::string csv = to_csv(s);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,set_size,metric,value");
    std::getline(in, line);
    CHECK(line == "10,10,energy_add,670");
    CHECK(csv.find("# slope=") != std::string::npos);
    CHECK(csv.find(",r2=") != std::string::npos);

    const ScalingSeries short_series = run_scaling(Construction::Interval, {10, 20}, {"energy_add"});
    CHECK(to_csv(short_series).find("# slope=") == std::string::npos);
    CHECK(to_json(short_series)["fit"].is_null());
    CHECK_THROWS_AS(fit_exponent(short_series), DomainError);
}

TEST_CASE("sidon verdict and witness") {
    CHECK(to_csv(sidon_check(GroundSet::from_elements({1, 2, 3}), Mode::Additive)) == "sidon,a,b,c,d\nfalse,1,3,2,2\n");
    CHECK(to_csv(sidon_check(GroundSet::from_elements({1, 2, 5}), Mode::Additive)) == "sidon,a,b,c,d\ntrue,,,,\n");
    const Json j = to_json(max_sidon_subset(build_interval(7), Mode::Additive, 1000));
    CHECK(j["size"] == 4);
    CHECK(j["optimal"] == true);
}

TEST_CASE("ground set json") {
    const Json j = to_json(build_interval(3));
    CHECK(j["size"] == 3);
    CHECK(j["elements"] == Json::array({1, 2, 3}));
}
