#include "cli.hpp"

#include "sidonlab/energy.hpp"
#include "sidonlab/errors.hpp"
#include "sidonlab/ground_set.hpp"
#include "sidonlab/low_energy.hpp"
#include "sidonlab/product_graph.hpp"
#include "sidonlab/report.hpp"
#include "sidonlab/scaling.hpp"
#include "sidonlab/sidon.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace sidonlab::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> kModes = {"additive", "multiplicative", "add", "mul", "+", "*"};
const std::vector<std::string> kConstructions = {"pq", "triple", "bw", "interval"};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

u64 parse_plain(const std::string& t) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
        throw UsageError("not a nonnegative integer: '" + t + "'");
    }
    try {
        return std::stoull(t);
    } catch (const std::out_of_range&) {
        throw UsageError("integer out of range: '" + t + "'");
    }
}

u64 power(u64 base, u64 exp) {
    u64 r = 1;
    for (u64 i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

struct SetInput {
    std::string file;
    std::string inline_list;
    std::string construct;
    u64 n = 0;
};

struct Output {
    std::string format;  // empty until parsed; then the subcommand's default
    std::string path;
};

struct Context {
    std::ostream& out;
    std::istream& in;
};

void add_set_input(CLI::App* cmd, SetInput& s) {
    cmd->add_option("--set-file", s.file, "Ground set file (one element per line, optional labels); '-' reads stdin");
    cmd->add_option("--set", s.inline_list, "Inline element list, e.g. \"1,2,5,7\" or \"1:20\"");
    cmd->add_option("--construct", s.construct, "Build the set in place instead")
        ->check(CLI::IsMember(kConstructions));
    cmd->add_option("--n", s.n, "Parameter for --construct");
}

// The first format listed is the subcommand's default.
void add_output(CLI::App* cmd, Output& o, std::vector<std::string> formats = {"json", "csv"}) {
    std::string text = "Output format: " + formats.front() + " (default)";
    for (std::size_t i = 1; i < formats.size(); ++i) text += ", " + formats[i];
    cmd->add_option("--format", o.format, text)->check(CLI::IsMember(formats));
    cmd->add_option("--out", o.path, "Write the report to this file instead of stdout");
}

GroundSet load_set(const SetInput& s, std::istream& in) {
    const int given = !s.file.empty() + !s.inline_list.empty() + !s.construct.empty();
    if (given != 1) throw UsageError("give exactly one of --set-file, --set, --construct");
    if (!s.construct.empty()) return build_construction(parse_construction(s.construct), s.n);
    if (!s.inline_list.empty()) return GroundSet::from_elements(parse_list(s.inline_list), "inline");
    if (s.file == "-") return read_ground_set(in);
    std::ifstream f(s.file);
    if (!f) throw DomainError("cannot open set file '" + s.file + "'");
    return read_ground_set(f);
}

ProductGraph load_graph(const std::string& graph_file, const SetInput& s, std::istream& in) {
    if (!graph_file.empty()) {
        if (!s.file.empty() || !s.inline_list.empty() || !s.construct.empty()) {
            throw UsageError("give either --graph-file or a set input, not both");
        }
        if (graph_file == "-") return read_graph(in);
        std::ifstream f(graph_file);
        if (!f) throw DomainError("cannot open graph file '" + graph_file + "'");
        return read_graph(f);
    }
    const GroundSet A = load_set(s, in);
    return graph_from_pq(A);
}

void emit(const Context& ctx, const Output& o, const std::string& text) {
    if (o.path.empty()) {
        ctx.out << text;
        return;
    }
    std::ofstream f(o.path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file '" + o.path + "'");
    f << text;
    if (!f) throw DomainError("failed writing '" + o.path + "'");
}

template <class T>
void emit_report_to(const Context& ctx, const Output& o, const T& report) {
    emit(ctx, o, emit_report(report, parse_format(o.format)));
}

void emit_flat(const Context& ctx, const Output& o, const Json& j) {
    emit(ctx, o, o.format == "json" ? j.dump(2) + "\n" : key_values(j));
}

std::string set_text(const GroundSet& A) {
    std::ostringstream os;
    write_ground_set(os, A);
    return os.str();
}

} // namespace

u64 parse_count(std::string_view text) {
    const std::string t = trim(text);
    if (t.empty()) throw UsageError("empty count");
    u64 total = 1;
    std::size_t start = 0;
    while (true) {
        const std::size_t star = t.find('*', start);
        const std::string factor = trim(t.substr(start, star == std::string::npos ? std::string::npos : star - start));
        u64 v = 0;
        if (const auto caret = factor.find('^'); caret != std::string::npos) {
            v = power(parse_plain(factor.substr(0, caret)), parse_plain(factor.substr(caret + 1)));
        } else if (const auto e = factor.find_first_of("eE"); e != std::string::npos) {
            const std::string mant = factor.substr(0, e);
            u64 exp = parse_plain(factor.substr(e + 1));
            const auto dot = mant.find('.');
            std::string digits = mant;
            if (dot != std::string::npos) {
                const std::size_t frac = mant.size() - dot - 1;
                if (frac > exp) throw UsageError("count '" + factor + "' is not an integer");
                digits = mant.substr(0, dot) + mant.substr(dot + 1);
                exp -= frac;
            }
            v = checked_mul(parse_plain(digits), power(10, exp));
        } else {
            v = parse_plain(factor);
        }
        total = checked_mul(total, v);
        if (star == std::string::npos) break;
        start = star + 1;
    }
    return total;
}

std::vector<u64> parse_list(std::string_view text) {
    std::string t(text);
    for (char& c : t) {
        if (c == ',' || c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    std::istringstream ss(t);
    std::vector<u64> out;
    std::string tok;
    while (ss >> tok) {
        const auto c1 = tok.find(':');
        if (c1 == std::string::npos) {
            out.push_back(parse_count(tok));
            continue;
        }
        const auto c2 = tok.find(':', c1 + 1);
        const u64 lo = parse_count(tok.substr(0, c1));
        const u64 hi = parse_count(tok.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1));
        const u64 step = c2 == std::string::npos ? 1 : parse_count(tok.substr(c2 + 1));
        if (step == 0 || lo > hi) throw UsageError("bad range '" + tok + "'");
        for (u64 v = lo; v <= hi; v += step) {
            out.push_back(v);
            if (hi - v < step) break;
        }
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

double parse_real(std::string_view text) {
    const std::string t = trim(text);
    auto one = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw UsageError("not a number: '" + s + "'");
        }
        if (used != s.size()) throw UsageError("not a number: '" + s + "'");
        return v;
    };
    if (const auto slash = t.find('/'); slash != std::string::npos) {
        const double den = one(trim(t.substr(slash + 1)));
        if (den == 0.0) throw UsageError("zero denominator in '" + t + "'");
        return one(trim(t.substr(0, slash))) / den;
    }
    return one(t);
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
    CLI::App app{"Sidon sets, additive and multiplicative energy, and the experiments around them."};
    app.name("sidonlab");
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success, 1 domain error, 2 usage error. Thread count: SIDONLAB_THREADS.");
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    const Context ctx{out, in};
    std::map<CLI::App*, std::function<void()>> actions;
    std::map<CLI::App*, std::string> default_format;
    SetInput set;
    Output output;
    std::string mode_text = "additive";
    std::string budget_text = "10^7";
    std::uint64_t seed = 0;

    auto add_mode = [&](CLI::App* cmd) {
        cmd->add_option("--mode", mode_text, "Operation: additive (a+b) or multiplicative (ab)")
            ->check(CLI::IsMember(kModes))
            ->capture_default_str();
    };
    auto add_budget = [&](CLI::App* cmd) {
        cmd->add_option("--budget", budget_text, "Search node budget, e.g. 10^7 or 5e6")->capture_default_str();
    };
    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "64-bit seed of the random stream")->required();
    };
    auto mode = [&] { return parse_mode(mode_text); };
    auto budget = [&] { return parse_count(budget_text); };

    // construct
    std::string kind;
    u64 param = 0;
    std::size_t sample_size = 0;
    double sample_p = -1.0;
    std::optional<std::uint64_t> sample_seed;
    {
        auto* cmd = app.add_subcommand("construct",
                                       "Build a ground set: pq = {pq : p <= n < q <= n^2/ln n, p, q prime}, "
                                       "triple = products of three primes <= N, bw = {(2i-1)2^j : i <= N^2, "
                                       "j <= N}, interval = {1..N}");
        cmd->add_option("kind", kind, "pq | triple | bw | interval")->required()->check(CLI::IsMember(kConstructions));
        cmd->add_option("--n", param, "Construction parameter")->required();
        cmd->add_option("--sample-size", sample_size, "Keep a uniform subset of this size");
        cmd->add_option("--sample-p", sample_p, "Keep each element independently with this probability");
        cmd->add_option("--seed", sample_seed, "Seed for --sample-size / --sample-p");
        add_output(cmd, output, {"set", "json", "csv"});
        default_format[cmd] = "set";
        actions[cmd] = [&] {
            GroundSet A = build_construction(parse_construction(kind), param);
            if (sample_size > 0 && sample_p >= 0.0) throw UsageError("give at most one of --sample-size, --sample-p");
            if (sample_size > 0 || sample_p >= 0.0) {
                if (!sample_seed) throw UsageError("sampling needs --seed");
                A = sample_subset(A, sample_size > 0 ? SampleSpec::fixed(sample_size, *sample_seed)
                                                     : SampleSpec::independent(sample_p, *sample_seed));
            }
            if (output.format == "set") {
                emit(ctx, output, set_text(A));
            } else {
                emit_report_to(ctx, output, A);
            }
        };
    }

    // energy
    std::optional<u64> expected_n;
    std::optional<u64> expected_m;
    {
        auto* cmd = app.add_subcommand("energy",
                                       "Additive and multiplicative energy (ordered quadruples a+b=c+d, ab=cd), "
                                       "their nontrivial parts, sum/product set sizes and |A|^4/|A+A| bounds; or "
                                       "the exact mean energy of a uniform m-subset of {1..n}");
        add_set_input(cmd, set);
        cmd->add_option("--expected-n", expected_n, "Ground interval size for the mean-energy mode");
        cmd->add_option("--expected-m", expected_m, "Subset size for the mean-energy mode");
        add_output(cmd, output);
        actions[cmd] = [&] {
            if (expected_n || expected_m) {
                if (!expected_n || !expected_m) throw UsageError("--expected-n and --expected-m go together");
                if (!set.file.empty() || !set.inline_list.empty() || !set.construct.empty()) {
                    throw UsageError("mean-energy mode takes no set input");
                }
                const Rational e = expected_energy_exact(*expected_n, *expected_m);
                const Rational e0 = expected_nontrivial_energy_exact(*expected_n, *expected_m);
                Json j;
                j["n"] = *expected_n;
                j["m"] = *expected_m;
                j["expected_energy"] = e.str();
                j["expected_energy_approx"] = float_json(e.to_double());
                j["expected_nontrivial_energy"] = e0.str();
                j["expected_nontrivial_energy_approx"] = float_json(e0.to_double());
                emit_flat(ctx, output, j);
                return;
            }
            emit_report_to(ctx, output, energy_report(load_set(set, in)));
        };
    }

    {
        auto* cmd = app.add_subcommand("sidon-check",
                                       "Is the set Sidon (all pair sums/products a*b, a <= b, distinct)? "
                                       "Otherwise report the first colliding pair of pairs");
        add_set_input(cmd, set);
        add_mode(cmd);
        add_output(cmd, output);
        actions[cmd] = [&] { emit_report_to(ctx, output, sidon_check(load_set(set, in), mode())); };
    }
    {
        auto* cmd = app.add_subcommand("sidon-max",
                                       "Largest Sidon subset by branch and bound; optimal is true when the "
                                       "search finished within the node budget");
        add_set_input(cmd, set);
        add_mode(cmd);
        add_budget(cmd);
        add_output(cmd, output);
        actions[cmd] = [&] { emit_report_to(ctx, output, max_sidon_subset(load_set(set, in), mode(), budget())); };
    }
    {
        auto* cmd = app.add_subcommand("sidon-greedy",
                                       "Ascending greedy Sidon subset: keep each element that creates no repeated "
                                       "pair value");
        add_set_input(cmd, set);
        add_mode(cmd);
        add_output(cmd, output);
        actions[cmd] = [&] { emit_report_to(ctx, output, greedy_sidon(load_set(set, in), mode())); };
    }
    {
        auto* cmd = app.add_subcommand("sidon-delete",
                                       "Random deletion: keep each element with p = (|A|/2V)^(1/3), V the number "
                                       "of violations, then delete one element of every surviving violation");
        add_set_input(cmd, set);
        add_mode(cmd);
        add_seed(cmd);
        add_output(cmd, output);
        actions[cmd] = [&] { emit_report_to(ctx, output, deletion_sidon(load_set(set, in), mode(), seed)); };
    }

    std::string graph_file;
    {
        auto* cmd = app.add_subcommand("c4",
                                       "4-cycle search in the bipartite graph with an edge (p, q) per element pq; "
                                       "a 4-cycle is exactly a multiplicative collision (pq)(p'q') = (pq')(p'q)");
        add_set_input(cmd, set);
        cmd->add_option("--graph-file", graph_file, "Graph file (P:/Q: headers, one 'p q' edge per line)");
        add_output(cmd, output);
        actions[cmd] = [&] { emit_report_to(ctx, output, find_c4(load_graph(graph_file, set, in))); };
    }

    std::optional<u64> size_p;
    std::optional<u64> size_q;
    {
        auto* cmd = app.add_subcommand("capacity",
                                       "Largest edge count e with e^2 <= |Q|(e + |P|^2), the ceiling on 4-cycle-"
                                       "free bipartite graphs with parts P, Q");
        add_set_input(cmd, set);
        cmd->add_option("--graph-file", graph_file, "Take |P| and |Q| from a graph file");
        cmd->add_option("--p-size", size_p, "|P|");
        cmd->add_option("--q-size", size_q, "|Q|");
        add_output(cmd, output);
        actions[cmd] = [&] {
            u64 p = 0;
            u64 q = 0;
            if (size_p || size_q) {
                if (!size_p || !size_q) throw UsageError("--p-size and --q-size go together");
                p = *size_p;
                q = *size_q;
            } else {
                const ProductGraph G = load_graph(graph_file, set, in);
                p = G.left.size();
                q = G.right.size();
            }
            Json j;
            j["size_p"] = p;
            j["size_q"] = q;
            j["capacity"] = c4free_capacity(p, q);
            emit_flat(ctx, output, j);
        };
    }
    {
        auto* cmd = app.add_subcommand("cs-audit",
                                       "Evaluate the Cauchy-Schwarz chain |E|^2 <= |Q| sum deg(q)^2 = "
                                       "|Q|(|E| + sum codeg) <= |Q|(|E| + |P|^2) on a concrete edge set");
        add_set_input(cmd, set);
        cmd->add_option("--graph-file", graph_file, "Graph file instead of a set input");
        add_output(cmd, output);
        actions[cmd] = [&] { emit_report_to(ctx, output, cs_chain_audit(load_graph(graph_file, set, in))); };
    }

    std::optional<std::size_t> size_cap;
    {
        auto* cmd = app.add_subcommand("t-exact",
                                       "Largest subset A' with energy below 2|A'|^2, by exhaustive search "
                                       "(at most 24 elements)");
        add_set_input(cmd, set);
        add_mode(cmd);
        cmd->add_option("--size-cap", size_cap, "Only try subsets up to this size (result not certified)");
        add_output(cmd, output);
        actions[cmd] = [&] {
            const GroundSet A = load_set(set, in);
            emit_report_to(ctx, output, t_exact(A, mode(), size_cap.value_or(A.size())));
        };
    }

    std::size_t trials = 100;
    double schedule_constant = 1.0;
    {
        auto* cmd = app.add_subcommand("t-search",
                                       "Randomized search for a large subset with energy below 2|A'|^2: peel to "
                                       "half size, then p-random subsets over a grid including "
                                       "p = 1/(100 C^(1/2) |A|^(3/8))");
        add_set_input(cmd, set);
        add_mode(cmd);
        cmd->add_option("--trials", trials, "Independent trials")->capture_default_str();
        cmd->add_option("--schedule-constant", schedule_constant, "C in the p schedule")->capture_default_str();
        add_seed(cmd);
        add_output(cmd, output);
        actions[cmd] = [&] {
            emit_report_to(ctx, output, t_random_search(load_set(set, in), mode(), trials, seed, schedule_constant));
        };
    }

    u64 bw_n = 0;
    std::string bw_c = "2";
    std::size_t samples = 100;
    {
        auto* cmd = app.add_subcommand("bw-audit",
                                       "Checks on {(2i-1)2^j : i <= N^2, j <= N}: |AA| <= 4N^5, each A_j an "
                                       "arithmetic progression of length N^2, and sampled subsets of size "
                                       "C|A|^(5/6) measured against 2|A'|^2 in both energies");
        cmd->add_option("--n", bw_n, "N")->required();
        cmd->add_option("--c", bw_c, "C (free constant)")->capture_default_str();
        cmd->add_option("--samples", samples, "Random subsets to measure")->capture_default_str();
        add_seed(cmd);
        add_output(cmd, output);
        actions[cmd] = [&] { emit_report_to(ctx, output, bw_audit(bw_n, parse_real(bw_c), samples, seed)); };
    }

    std::string construction;
    std::string params;
    std::string metrics;
    std::string fit_metric;
    {
        auto* cmd = app.add_subcommand("scaling",
                                       "Evaluate metrics over a parameter sweep of a construction and fit the "
                                       "log-log slope of one metric against |A|");
        cmd->add_option("--construction", construction, "pq | triple | bw | interval")
            ->required()
            ->check(CLI::IsMember(kConstructions));
        cmd->add_option("--params", params, "Parameter list, e.g. \"20:200:10\" or \"10,20,40\"")->required();
        cmd->add_option("--metrics", metrics,
                        "Comma-separated: sumset_size, productset_size, c4free_capacity, sidon_upper_bound, "
                        "exact_s_plus, exact_s_times, energy_add, energy_mul")
            ->required();
        cmd->add_option("--fit", fit_metric, "Metric to fit (default: the first)");
        add_output(cmd, output, {"csv", "json"});
        default_format[cmd] = "csv";
        actions[cmd] = [&] {
            std::vector<std::string> names;
            std::string cleaned = metrics;
            for (char& c : cleaned) {
                if (c == ',') c = ' ';
            }
            std::istringstream ss(cleaned);
            for (std::string m; ss >> m;) names.push_back(m);
            emit_report_to(ctx, output,
                           run_scaling(parse_construction(construction), parse_list(params), names, fit_metric));
        };
    }

    u64 klr_n = 0;
    std::string klr_a;
    {
        auto* cmd = app.add_subcommand("klr",
                                       "Exact largest additive Sidon subset of uniform m-subsets of {1..n}, "
                                       "m = round(n^a), with s/n^(1/3) and s/m^(1/2) statistics");
        cmd->add_option("--n", klr_n, "n (at most 120)")->required();
        cmd->add_option("--a", klr_a, "Exponent a in [1/3, 1], e.g. 1/3 or 0.5")->required();
        cmd->add_option("--trials", trials, "Random subsets")->capture_default_str();
        add_budget(cmd);
        add_seed(cmd);
        add_output(cmd, output);
        actions[cmd] = [&] {
            emit_report_to(ctx, output, klr_experiment(klr_n, parse_real(klr_a), trials, seed, budget()));
        };
    }
    {
        auto* cmd = app.add_subcommand("audit",
                                       "Evidence table for one set: exact or budgeted largest Sidon subsets in "
                                       "both operations, upper bounds from pair counts and 4-cycle capacity, "
                                       "greedy and deletion lower bounds, energy searches, and "
                                       "|A|^(2/3)/(K^(2/3) ln^(1/3)|A|) with K = |A+A|/|A|");
        add_set_input(cmd, set);
        add_budget(cmd);
        add_seed(cmd);
        add_output(cmd, output);
        actions[cmd] = [&] { emit_report_to(ctx, output, conjecture_audit(load_set(set, in), budget(), seed)); };
    }

    CLI::App* active = nullptr;
    auto usage = [&](const std::string& message) {
        err << "error: " << message << "\n\n" << (active ? active->help() : app.help());
        return 2;
    };
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        for (auto& [cmd, action] : actions) {
            if (cmd->parsed()) active = cmd;
        }
        if (!active) return usage("no subcommand given");
        if (output.format.empty()) {
            const auto d = default_format.find(active);
            output.format = d == default_format.end() ? "json" : d->second;
        }
        actions.at(active)();
        return 0;
    } catch (const CLI::CallForHelp&) {
        for (auto& [cmd, action] : actions) {
            if (cmd->parsed()) active = cmd;
        }
        out << (active ? active->help() : app.help());
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        for (auto& [cmd, action] : actions) {
            if (cmd->parsed()) active = cmd;
        }
        return usage(e.what());
    } catch (const UsageError& e) {
        return usage(e.what());
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace sidonlab::cli
