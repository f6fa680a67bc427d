#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using sidonlab::cli::run_command;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::ostringstream out;
    std::ostringstream err;
    std::istringstream in(stdin_text);
    Run r;
    r.code = run_command(args, out, err, in);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    const auto path = std::filesystem::temp_directory_path() / ("sidonlab_test_" + name);
    std::ofstream(path) << contents;
    return path;
}

int lines(const std::string& s, bool skip_comments) {
    std::istringstream in(s);
    int n = 0;
    for (std::string line; std::getline(in, line);) n += !(skip_comments && !line.empty() && line[0] == '#');
    return n;
}

} // namespace

TEST_CASE("construct") {
    const Run r = run({"construct", "pq", "--n", "6"});
    CHECK(r.code == 0);
    CHECK(lines(r.out, true) == 15);
    CHECK(r.out.find("35\t5,7") != std::string::npos);

    const Run bad = run({"construct", "pq", "--n", "1"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("empty prime interval") != std::string::npos);

    const Run json = run({"construct", "interval", "--n", "5", "--format", "json"});
    CHECK(nlohmann::json::parse(json.out)["elements"].size() == 5);

    const Run sampled = run({"construct", "interval", "--n", "100", "--sample-size", "10", "--seed", "1"});
    CHECK(sampled.code == 0);
    CHECK(sampled.out.find("\n10\n28\n31\n36\n55\n64\n72\n85\n96\n100\n") != std::string::npos);
    CHECK(run({"construct", "interval", "--n", "100", "--sample-size", "10"}).code == 2);
}

TEST_CASE("sidon-max on a set file, as in the documented example") {
    const auto path = temp_file("i7.txt", run({"construct", "interval", "--n", "7"}).out);
    const Run r = run({"sidon-max", "--set-file", path.string(), "--mode", "additive", "--budget", "10^7"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["size"] == 4);
    CHECK(j["optimal"] == true);
    std::filesystem::remove(path);
}

TEST_CASE("standard input and inline sets") {
    const Run piped = run({"sidon-check", "--set-file", "-", "--mode", "mul"}, "10\n14\n15\n21\n");
    REQUIRE(piped.code == 0);
    const auto j = nlohmann::json::parse(piped.out);
    CHECK(j["sidon"] == false);
    CHECK(j["witness"] == nlohmann::json::array({10, 21, 14, 15}));

    const Run inline_set = run({"energy", "--set", "1,2"});
    CHECK(nlohmann::json::parse(inline_set.out)["energy_add"] == 6);

    const Run c4 = run({"c4", "--construct", "pq", "--n", "4"});
    CHECK(nlohmann::json::parse(c4.out)["witness"]["q2"] == 7);
}

TEST_CASE("usage errors exit 2 and print the grammar") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {},
             {"nope"},
             {"sidon-check"},
             {"sidon-check", "--set", "1,2", "--set-file", "x"},
             {"sidon-check", "--set", "1,2", "--mode", "division"},
             {"sidon-delete", "--set", "1:20"},
             {"sidon-max", "--set", "1:20", "--budget", "lots"},
             {"energy", "--expected-n", "10"},
             {"klr", "--n", "50", "--a", "x/3", "--seed", "1"},
             {"scaling", "--construction", "pq", "--metrics", "sumset_size"},
         }) {
        const Run r = run(args);
        CHECK(r.code == 2);
        CHECK(r.err.find("error:") == 0);
        CHECK(r.err.find("Usage:") != std::string::npos);
    }
}

TEST_CASE("domain errors exit 1") {
    CHECK(run({"t-exact", "--set", "1:30"}).code == 1);
    CHECK(run({"bw-audit", "--n", "3", "--c", "2", "--seed", "1"}).code == 1);
    CHECK(run({"klr", "--n", "500", "--a", "1/2", "--seed", "1"}).code == 1);
    CHECK(run({"sidon-check", "--set-file", "/nonexistent/file"}).code == 1);
    CHECK(run({"c4", "--set", "1:10"}).code == 1);
    CHECK(run({"scaling", "--construction", "interval", "--params", "10:30:10", "--metrics", "bogus"}).code == 1);
}

TEST_CASE("help exits 0") {
    const Run top = run({"--help"});
    CHECK(top.code == 0);
    CHECK(top.out.find("sidon-max") != std::string::npos);
    const Run sub = run({"bw-audit", "--help"});
    CHECK(sub.code == 0);
    CHECK(sub.out.find("4N^5") != std::string::npos);
}

TEST_CASE("number parsing") {
    using namespace sidonlab::cli;
    CHECK(parse_count("10^7") == 10'000'000);
    CHECK(parse_count("1e7") == 10'000'000);
    CHECK(parse_count("2.5e3") == 2500);
    CHECK(parse_count("2*10^6") == 2'000'000);
    CHECK(parse_count(" 42 ") == 42);
    CHECK_THROWS(parse_count("1.5e0"));
    CHECK_THROWS(parse_count("-3"));
    CHECK_THROWS(parse_count("10^30"));
    CHECK(parse_list("20:50:10") == std::vector<std::uint64_t>{20, 30, 40, 50});
    CHECK(parse_list("1, 2 5,7") == std::vector<std::uint64_t>{1, 2, 5, 7});
    CHECK(parse_list("1:3,9") == std::vector<std::uint64_t>{1, 2, 3, 9});
    CHECK_THROWS(parse_list("5:1"));
    CHECK_THROWS(parse_list(""));
    CHECK(parse_real("1/3") == doctest::Approx(1.0 / 3.0));
    CHECK(parse_real("0.5") == 0.5);
    CHECK_THROWS(parse_real("half"));
}

TEST_CASE("seeded commands are byte-identical across runs") {
    const std::vector<std::vector<std::string>> commands = {
        {"construct", "pq", "--n", "12", "--sample-p", "0.3", "--seed", "5"},
        {"sidon-delete", "--construct", "pq", "--n", "12", "--mode", "mul", "--seed", "17"},
        {"t-search", "--set", "1:40", "--trials", "10", "--seed", "3"},
        {"bw-audit", "--n", "3", "--c", "1.5", "--samples", "10", "--seed", "9"},
        {"klr", "--n", "60", "--a", "1/2", "--trials", "5", "--seed", "2", "--format", "csv"},
        {"audit", "--construct", "pq", "--n", "6", "--seed", "11"},
        {"scaling", "--construction", "pq", "--params", "20:60:20", "--metrics", "c4free_capacity"},
    };
    for (const auto& cmd : commands) {
        const Run a = run(cmd);
        const Run b = run(cmd);
        CHECK(a.code == 0);
        CHECK(!a.out.empty());
        CHECK(a.out == b.out);
    }
    const Run s1 = run({"sidon-delete", "--set", "1:200", "--seed", "1"});
    const Run s2 = run({"sidon-delete", "--set", "1:200", "--seed", "2"});
    CHECK(s1.out != s2.out);
}

TEST_CASE("--out writes the report to a file") {
    const auto path = std::filesystem::temp_directory_path() / "sidonlab_test_out.json";
    const Run r = run({"energy", "--set", "1,2", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(nlohmann::json::parse(ss.str())["energy_add"] == 6);
    std::filesystem::remove(path);
}

TEST_CASE("the installed binary reports exit codes") {
    const std::string tool = SIDONLAB_TOOL_PATH;
    auto status = [&](const std::string& args) {
        const int raw = std::system((tool + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("construct pq --n 6") == 0);
    CHECK(status("construct pq --n 1") == 1);
    CHECK(status("construct") == 2);
    CHECK(status("construct interval --n 9 | " + tool + " sidon-max --set-file -") == 0);
}
