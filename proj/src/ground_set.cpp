#include "sidonlab/ground_set.hpp"

#include "sidonlab/primes.hpp"
#include "sidonlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace sidonlab {

namespace {

void check_strict(const std::vector<u64>& v) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) throw DomainError("ground set elements must be positive");
        if (k > 0 && v[k] == v[k - 1]) throw DomainError("duplicate element " + std::to_string(v[k]));
    }
}

u64 parse_u64(const std::string& tok, const std::string& what) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
        throw DomainError("malformed " + what + ": '" + tok + "'");
    }
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(tok, &used);
    } catch (const std::out_of_range&) {
        throw OverflowError(what + " exceeds 64 bits: " + tok);
    }
    return v;
}

} // namespace

GroundSet GroundSet::from_elements(std::vector<u64> elements, std::string provenance) {
    std::sort(elements.begin(), elements.end());
    check_strict(elements);
    GroundSet g;
    g.elements_ = std::move(elements);
    g.provenance_ = std::move(provenance);
    return g;
}

GroundSet GroundSet::from_labelled(std::vector<u64> elements, std::vector<std::vector<u64>> labels,
                                   LabelKind kind, std::string provenance) {
    if (labels.size() != elements.size()) throw DomainError("label count does not match element count");
    std::vector<std::size_t> order(elements.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return elements[a] < elements[b]; });
    GroundSet g;
    g.elements_.reserve(elements.size());
    g.labels_.reserve(elements.size());
    for (std::size_t k : order) {
        g.elements_.push_back(elements[k]);
        g.labels_.push_back(std::move(labels[k]));
    }
    check_strict(g.elements_);
    if (kind == LabelKind::PrimeFactors) {
        for (std::size_t k = 0; k < g.elements_.size(); ++k) {
            u64 prod = 1;
            for (u64 f : g.labels_[k]) prod = checked_mul(prod, f);
            if (prod != g.elements_[k]) {
                throw DomainError("label of " + std::to_string(g.elements_[k]) + " does not multiply to it");
            }
        }
    }
    g.label_kind_ = kind;
    if (kind == LabelKind::None) g.labels_.clear();
    g.provenance_ = std::move(provenance);
    return g;
}

bool GroundSet::contains(u64 x) const {
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

const std::vector<u64>& GroundSet::label_of(u64 x) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
    if (it == elements_.end() || *it != x) throw DomainError(std::to_string(x) + " is not a member");
    if (!has_labels()) throw DomainError("set carries no labels");
    return labels_[static_cast<std::size_t>(it - elements_.begin())];
}

GroundSet GroundSet::subset_by_index(std::span<const std::size_t> indices, std::string provenance) const {
    GroundSet g;
    g.label_kind_ = label_kind_;
    g.provenance_ = std::move(provenance);
    g.elements_.reserve(indices.size());
    for (std::size_t k = 0; k < indices.size(); ++k) {
        const std::size_t i = indices[k];
        if (i >= elements_.size()) throw DomainError("subset index out of range");
        if (k > 0 && i <= indices[k - 1]) throw DomainError("subset indices must be strictly increasing");
        g.elements_.push_back(elements_[i]);
        if (has_labels()) g.labels_.push_back(labels_[i]);
    }
    return g;
}

GroundSet GroundSet::subset_by_value(std::span<const u64> values, std::string provenance) const {
    std::vector<std::size_t> idx;
    idx.reserve(values.size());
    for (u64 v : values) {
        auto it = std::lower_bound(elements_.begin(), elements_.end(), v);
        if (it == elements_.end() || *it != v) throw DomainError(std::to_string(v) + " is not a member");
        idx.push_back(static_cast<std::size_t>(it - elements_.begin()));
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return subset_by_index(idx, std::move(provenance));
}

u64 pq_upper_limit(u64 n) {
    if (n < 2) return 0;
    const double nd = static_cast<double>(n);
    return static_cast<u64>(std::floor(nd * nd / std::log(nd)));
}

GroundSet build_pq_set(u64 n) {
    const std::string prov = "pq n=" + std::to_string(n);
    if (n < 2) throw DomainError("empty prime interval: no primes p <= " + std::to_string(n) + " < q");
    const u64 hi = pq_upper_limit(n);
    const std::vector<u64> P = primes_up_to(n).primes;
    const std::vector<u64> Q = primes_in_interval(n, hi);
    if (Q.empty()) {
        throw DomainError("empty prime interval (" + std::to_string(n) + ", " + std::to_string(hi) + "]");
    }
    checked_mul(P.back(), Q.back());
    std::vector<u64> elems;
    std::vector<std::vector<u64>> labels;
    elems.reserve(P.size() * Q.size());
    labels.reserve(P.size() * Q.size());
    for (u64 p : P) {
        for (u64 q : Q) {
            elems.push_back(p * q);
            labels.push_back({p, q});
        }
    }
    return GroundSet::from_labelled(std::move(elems), std::move(labels), LabelKind::PrimeFactors, prov);
}

GroundSet build_triple_prime_set(u64 N) {
    const std::vector<u64> P = primes_up_to(N).primes;
    if (P.empty()) throw DomainError("empty prime interval: no primes <= " + std::to_string(N));
    checked_mul(checked_mul(P.back(), P.back()), P.back());
    std::vector<u64> elems;
    std::vector<std::vector<u64>> labels;
    for (std::size_t a = 0; a < P.size(); ++a) {
        for (std::size_t b = a; b < P.size(); ++b) {
            for (std::size_t c = b; c < P.size(); ++c) {
                elems.push_back(P[a] * P[b] * P[c]);
                labels.push_back({P[a], P[b], P[c]});
            }
        }
    }
    return GroundSet::from_labelled(std::move(elems), std::move(labels), LabelKind::PrimeFactors,
                         "triple N=" + std::to_string(N));
}

GroundSet build_bw_set(u64 N) {
    if (N < 1) throw DomainError("bw construction needs N >= 1");
    if (N >= 64) throw OverflowError("2^N exceeds 64 bits for N=" + std::to_string(N));
    const u64 rows = checked_mul(N, N);
    const u64 top_odd = checked_mul(2, rows) - 1;
    checked_mul(top_odd, u64{1} << N);
    checked_mul(rows, N);
    std::vector<u64> elems;
    std::vector<std::vector<u64>> labels;
    elems.reserve(rows * N);
    labels.reserve(rows * N);
    for (u64 j = 1; j <= N; ++j) {
        for (u64 i = 1; i <= rows; ++i) {
            elems.push_back((2 * i - 1) << j);
            labels.push_back({i, j});
        }
    }
    return GroundSet::from_labelled(std::move(elems), std::move(labels), LabelKind::BwIndex, "bw N=" + std::to_string(N));
}

GroundSet build_interval(u64 N) {
    if (N < 1) throw DomainError("interval needs N >= 1");
    std::vector<u64> elems(N);
    std::iota(elems.begin(), elems.end(), u64{1});
    return GroundSet::from_elements(std::move(elems), "interval N=" + std::to_string(N));
}

GroundSet sample_subset(const GroundSet& ground, const SampleSpec& spec) {
    const std::size_t n = ground.size();
    Xorshift64Star rng(spec.seed);
    std::vector<std::size_t> chosen;
    std::ostringstream prov;
    prov << ground.provenance() << " | ";
    if (spec.kind == SampleKind::FixedSize) {
        if (spec.m > n) {
            throw DomainError("sample size " + std::to_string(spec.m) + " exceeds ground size " + std::to_string(n));
        }
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t i = 0; i < spec.m; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
            std::swap(idx[i], idx[j]);
        }
        chosen.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(spec.m));
        std::sort(chosen.begin(), chosen.end());
        prov << "sample fixed m=" << spec.m << " seed=" << spec.seed;
    } else {
        if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw DomainError("inclusion probability must lie in [0, 1]");
        for (std::size_t i = 0; i < n; ++i) {
            if (rng.bernoulli(spec.p)) chosen.push_back(i);
        }
        prov << "sample independent p=" << spec.p << " seed=" << spec.seed;
    }
    return ground.subset_by_index(chosen, prov.str());
}

void write_ground_set(std::ostream& os, const GroundSet& set) {
    if (!set.provenance().empty()) os << "# provenance: " << set.provenance() << '\n';
    if (set.label_kind() == LabelKind::PrimeFactors) os << "# labels: factors\n";
    if (set.label_kind() == LabelKind::BwIndex) os << "# labels: bw-index\n";
    for (std::size_t k = 0; k < set.size(); ++k) {
        os << set[k];
        if (set.has_labels()) {
            os << '\t';
            const auto& lab = set.label(k);
            for (std::size_t t = 0; t < lab.size(); ++t) os << (t ? "," : "") << lab[t];
        }
        os << '\n';
    }
}

GroundSet read_ground_set(std::istream& is) {
    std::vector<u64> elems;
    std::vector<std::vector<u64>> labels;
    LabelKind kind = LabelKind::None;
    std::string provenance = "file";
    std::string line;
    std::size_t labelled_lines = 0;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = line.substr(line.find_first_not_of("# ") == std::string::npos
                                                     ? line.size()
                                                     : line.find_first_not_of("# "));
            if (body.rfind("provenance:", 0) == 0) {
                provenance = body.substr(body.find(':') + 1);
                provenance.erase(0, provenance.find_first_not_of(' '));
            } else if (body == "labels: factors") {
                kind = LabelKind::PrimeFactors;
            } else if (body == "labels: bw-index") {
                kind = LabelKind::BwIndex;
            }
            continue;
        }
        const auto tab = line.find('\t');
        std::string head = line.substr(0, tab);
        head.erase(head.find_last_not_of(' ') + 1);
        head.erase(0, head.find_first_not_of(' '));
        elems.push_back(parse_u64(head, "element"));
        std::vector<u64> lab;
        if (tab != std::string::npos) {
            std::stringstream ss(line.substr(tab + 1));
            std::string tok;
            while (std::getline(ss, tok, ',')) lab.push_back(parse_u64(tok, "label factor"));
            ++labelled_lines;
        }
        labels.push_back(std::move(lab));
    }
    if (labelled_lines > 0 && kind == LabelKind::None) kind = LabelKind::PrimeFactors;
    if (kind != LabelKind::None && labelled_lines != elems.size()) {
        throw DomainError("either every element or none must carry a label");
    }
    if (kind == LabelKind::None) return GroundSet::from_elements(std::move(elems), provenance);
    return GroundSet::from_labelled(std::move(elems), std::move(labels), kind, provenance);
}

} // namespace sidonlab
