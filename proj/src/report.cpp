#include "sidonlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sidonlab {

double to_double(const Quantity& q) {
    if (const auto* i = std::get_if<u64>(&q)) return static_cast<double>(*i);
    if (const auto* r = std::get_if<Rational>(&q)) return r->to_double();
    return std::get<double>(q);
}

Format parse_format(std::string_view text) {
    if (text == "json") return Format::Json;
    if (text == "csv") return Format::Csv;
    throw DomainError("unknown output format '" + std::string(text) + "' (expected csv or json)");
}

std::string format_float(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

Json float_json(double x) {
    if (!std::isfinite(x)) return nullptr;
    return std::stod(format_float(x));
}

namespace {

Json u128_json(u128 v) {
    if (v >> 64) return to_string(v);
    return static_cast<u64>(v);
}

std::string quantity_text(const Quantity& q) {
    if (const auto* i = std::get_if<u64>(&q)) return std::to_string(*i);
    if (const auto* r = std::get_if<Rational>(&q)) return r->str();
    return format_float(std::get<double>(q));
}

std::string pass_text(const std::optional<bool>& pass) {
    if (!pass) return "skipped";
    return *pass ? "true" : "false";
}

std::string join(const std::vector<u64>& v, char sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

} // namespace

std::string key_values(const Json& flat) {
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [k, v] : flat.items()) {
        os << k << ',';
        if (v.is_string()) {
            os << v.get<std::string>();
        } else if (v.is_array()) {
            std::string cell;
            for (std::size_t i = 0; i < v.size(); ++i) cell += (i ? " " : "") + v[i].dump();
            os << cell;
        } else if (v.is_number_float()) {
            os << format_float(v.get<double>());
        } else {
            os << v.dump();
        }
        os << '\n';
    }
    return os.str();
}

Json to_json(const Quantity& q) {
    if (const auto* i = std::get_if<u64>(&q)) return *i;
    if (const auto* r = std::get_if<Rational>(&q)) return r->str();
    return float_json(std::get<double>(q));
}

Json to_json(const GroundSet& s) {
    Json j;
    j["provenance"] = s.provenance();
    j["size"] = s.size();
    j["elements"] = s.values();
    return j;
}

Json to_json(const EnergyReport& r) {
    Json j;
    j["set_size"] = r.set_size;
    j["energy_add"] = r.energy_add;
    j["energy_mul"] = r.energy_mul;
    j["nontrivial_add"] = r.nontrivial_add;
    j["nontrivial_mul"] = r.nontrivial_mul;
    j["sumset_size"] = r.sumset_size;
    j["productset_size"] = r.productset_size;
    j["cs_lower_add"] = r.cs_lower_add.str();
    j["cs_lower_mul"] = r.cs_lower_mul.str();
    return j;
}

Json to_json(const std::optional<SidonWitness>& verdict) {
    Json j;
    j["sidon"] = !verdict.has_value();
    if (verdict) {
        j["witness"] = {verdict->a, verdict->b, verdict->c, verdict->d};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json to_json(const MaxSubsetResult& r) {
    Json j;
    j["size"] = r.size;
    j["optimal"] = r.optimal;
    j["nodes_explored"] = r.nodes_explored;
    j["subset"] = r.subset.values();
    return j;
}

Json to_json(const DeletionResult& r) {
    Json j;
    j["size"] = r.subset.size();
    j["p"] = float_json(r.p);
    j["violations"] = u128_json(r.violations);
    j["sampled"] = r.sampled;
    j["deleted"] = r.deleted;
    j["subset"] = r.subset.values();
    return j;
}

Json to_json(const std::optional<C4Witness>& w) {
    Json j;
    j["c4_free"] = !w.has_value();
    if (w) {
        j["witness"] = {{"p", w->p}, {"p2", w->p2}, {"q", w->q}, {"q2", w->q2}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json to_json(const std::vector<AuditCheck>& checks) {
    Json arr = Json::array();
    for (const AuditCheck& c : checks) {
        Json j;
        j["check"] = c.check;
        j["lhs"] = to_json(c.lhs);
        j["rhs"] = to_json(c.rhs);
        if (c.pass) {
            j["pass"] = *c.pass;
        } else {
            j["pass"] = nullptr;
        }
        arr.push_back(std::move(j));
    }
    return arr;
}

Json to_json(const LowEnergyResult& r) {
    Json j;
    j["mode"] = std::string(mode_name(r.mode));
    j["size"] = r.size;
    j["energy"] = r.energy;
    j["optimal"] = r.optimal;
    j["subset"] = r.subset.values();
    return j;
}

Json to_json(const TSearchResult& r) {
    Json j = to_json(r.best);
    j["best_p"] = float_json(r.best_p);
    j["half_size"] = r.half_size;
    Json grid = Json::array();
    for (double p : r.grid) grid.push_back(float_json(p));
    j["grid"] = grid;
    return j;
}

Json to_json(const BwAuditReport& r) {
    Json j;
    j["N"] = r.N;
    j["C"] = float_json(r.C);
    j["subset_size"] = r.subset_size;
    j["samples"] = r.samples;
    j["failing_both"] = r.failing_both;
    j["failing_both_fraction"] = r.samples ? float_json(static_cast<double>(r.failing_both) / static_cast<double>(r.samples))
                                           : Json(nullptr);
    j["checks"] = to_json(r.checks);
    return j;
}

Json to_json(const FitResult& f) {
    Json j;
    j["slope"] = float_json(f.slope);
    j["intercept"] = float_json(f.intercept);
    j["stderr"] = float_json(f.slope_stderr);
    j["r2"] = float_json(f.r2);
    j["rows_used"] = f.rows_used;
    return j;
}

Json to_json(const ScalingSeries& s) {
    Json j;
    j["construction"] = s.construction;
    j["fit_metric"] = s.fit_metric;
    Json rows = Json::array();
    for (const ScalingRow& r : s.rows) {
        Json row;
        row["n"] = r.n;
        row["set_size"] = r.set_size;
        row["metric"] = r.metric;
        row["value"] = float_json(r.value);
        rows.push_back(std::move(row));
    }
    j["rows"] = rows;
    j["fit"] = s.fit ? to_json(*s.fit) : Json(nullptr);
    return j;
}

Json to_json(const KlrReport& r) {
    Json j;
    j["n"] = r.n;
    j["a"] = float_json(r.a);
    j["m"] = r.m;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["all_optimal"] = r.all_optimal;
    j["mean"] = float_json(r.mean);
    j["median"] = float_json(r.median);
    j["min"] = r.min;
    j["max"] = r.max;
    j["mean_over_n_cbrt"] = float_json(r.mean_over_n_cbrt);
    j["mean_over_sqrt_m"] = float_json(r.mean_over_sqrt_m);
    j["s_plus"] = r.s_plus;
    return j;
}

Json to_json(const ConjectureAudit& a) {
    Json j;
    j["provenance"] = a.provenance;
    Json entries = Json::array();
    for (const AuditEntry& e : a.entries) {
        Json row;
        row["quantity"] = e.quantity;
        row["value"] = to_json(e.value);
        row["certified"] = e.certified;
        entries.push_back(std::move(row));
    }
    j["entries"] = entries;
    return j;
}

std::string to_csv(const GroundSet& s) {
    std::string out = "element\n";
    for (u64 x : s.elements()) out += std::to_string(x) + "\n";
    return out;
}

std::string to_csv(const EnergyReport& r) { return key_values(to_json(r)); }

std::string to_csv(const std::optional<SidonWitness>& verdict) {
    std::string out = "sidon,a,b,c,d\n";
    if (!verdict) return out + "true,,,,\n";
    return out + "false," + join({verdict->a, verdict->b, verdict->c, verdict->d}, ',') + "\n";
}

std::string to_csv(const MaxSubsetResult& r) { return key_values(to_json(r)); }
std::string to_csv(const DeletionResult& r) { return key_values(to_json(r)); }

std::string to_csv(const std::optional<C4Witness>& w) {
    std::string out = "c4_free,p,p2,q,q2\n";
    if (!w) return out + "true,,,,\n";
    return out + "false," + join({w->p, w->p2, w->q, w->q2}, ',') + "\n";
}

std::string to_csv(const std::vector<AuditCheck>& checks) {
    std::string out = "check,lhs,rhs,pass\n";
    for (const AuditCheck& c : checks) {
        out += c.check + "," + quantity_text(c.lhs) + "," + quantity_text(c.rhs) + "," + pass_text(c.pass) + "\n";
    }
    return out;
}

std::string to_csv(const LowEnergyResult& r) { return key_values(to_json(r)); }
std::string to_csv(const TSearchResult& r) { return key_values(to_json(r)); }

std::string to_csv(const BwAuditReport& r) {
    std::ostringstream os;
    os << "# N=" << r.N << ",C=" << format_float(r.C) << ",subset_size=" << r.subset_size
       << ",samples=" << r.samples << ",failing_both=" << r.failing_both << '\n';
    os << to_csv(r.checks);
    return os.str();
}

std::string to_csv(const ScalingSeries& s) {
    std::ostringstream os;
    os << "n,set_size,metric,value\n";
    for (const ScalingRow& r : s.rows) {
        os << r.n << ',' << r.set_size << ',' << r.metric << ',' << format_float(r.value) << '\n';
    }
    if (s.fit) {
        os << "# slope=" << format_float(s.fit->slope) << ",stderr=" << format_float(s.fit->slope_stderr)
           << ",r2=" << format_float(s.fit->r2) << '\n';
        os << "# intercept=" << format_float(s.fit->intercept) << ",metric=" << s.fit_metric
           << ",rows=" << s.fit->rows_used << '\n';
    }
    return os.str();
}

std::string to_csv(const KlrReport& r) { return key_values(to_json(r)); }

std::string to_csv(const ConjectureAudit& a) {
    std::string out = "quantity,value,certified\n";
    for (const AuditEntry& e : a.entries) {
        out += e.quantity + "," + quantity_text(e.value) + "," + (e.certified ? "true" : "false") + "\n";
    }
    return out;
}

} // namespace sidonlab
