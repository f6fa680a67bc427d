#pragma once

// JSON and CSV serialization of every report type. Output is byte-stable:
// object keys keep insertion order, rationals print as "num/den", floats are
// rounded to 12 significant digits.

#include "sidonlab/audit.hpp"
#include "sidonlab/energy.hpp"
#include "sidonlab/ground_set.hpp"
#include "sidonlab/low_energy.hpp"
#include "sidonlab/product_graph.hpp"
#include "sidonlab/scaling.hpp"
#include "sidonlab/sidon.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sidonlab {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv };
Format parse_format(std::string_view text);

/// "%.12g".
std::string format_float(double x);
/// A double rounded to 12 significant digits; null when not finite.
Json float_json(double x);
/// `key,value` rows for a flat JSON object; arrays become space-separated cells.
std::string key_values(const Json& flat);

Json to_json(const Quantity& q);
Json to_json(const GroundSet& s);
Json to_json(const EnergyReport& r);
Json to_json(const std::optional<SidonWitness>& verdict);
Json to_json(const MaxSubsetResult& r);
Json to_json(const DeletionResult& r);
Json to_json(const std::optional<C4Witness>& w);
Json to_json(const std::vector<AuditCheck>& checks);
Json to_json(const LowEnergyResult& r);
Json to_json(const TSearchResult& r);
Json to_json(const BwAuditReport& r);
Json to_json(const FitResult& f);
Json to_json(const ScalingSeries& s);
Json to_json(const KlrReport& r);
Json to_json(const ConjectureAudit& a);

std::string to_csv(const GroundSet& s);
std::string to_csv(const EnergyReport& r);
std::string to_csv(const std::optional<SidonWitness>& verdict);
std::string to_csv(const MaxSubsetResult& r);
std::string to_csv(const DeletionResult& r);
std::string to_csv(const std::optional<C4Witness>& w);
std::string to_csv(const std::vector<AuditCheck>& checks);
std::string to_csv(const LowEnergyResult& r);
std::string to_csv(const TSearchResult& r);
std::string to_csv(const BwAuditReport& r);
/// Header `n,set_size,metric,value`, then `# slope=...,stderr=...,r2=...` when fitted.
std::string to_csv(const ScalingSeries& s);
std::string to_csv(const KlrReport& r);
std::string to_csv(const ConjectureAudit& a);

template <class T>
std::string emit_report(const T& report, Format format) {
    if (format == Format::Json) return to_json(report).dump(2) + "\n";
    return to_csv(report);
}

} // namespace sidonlab
