#pragma once

#include "sidonlab/errors.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sidonlab {

/// What the per-element label records.
///  - PrimeFactors: prime factors with multiplicity, ascending; their product is the element.
///  - BwIndex: the pair (i, j) with element (2i-1)*2^j.
enum class LabelKind { None, PrimeFactors, BwIndex };

/// Finite, strictly increasing set of positive integers, optionally labelled.
class GroundSet {
public:
    GroundSet() = default;

    /// Sorts the input; throws DomainError on duplicates or zero.
    static GroundSet from_elements(std::vector<u64> elements, std::string provenance = "explicit");

    /// `labels[k]` belongs to `elements[k]` *before* sorting; both are co-sorted.
    static GroundSet from_labelled(std::vector<u64> elements, std::vector<std::vector<u64>> labels,
                                   LabelKind kind, std::string provenance);

    std::span<const u64> elements() const { return elements_; }
    const std::vector<u64>& values() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    u64 operator[](std::size_t k) const { return elements_[k]; }
    u64 max() const { return elements_.back(); }
    bool contains(u64 x) const;

    LabelKind label_kind() const { return label_kind_; }
    bool has_labels() const { return label_kind_ != LabelKind::None; }
    const std::vector<u64>& label(std::size_t k) const { return labels_.at(k); }
    /// Label of the element equal to x; throws if absent.
    const std::vector<u64>& label_of(u64 x) const;

    const std::string& provenance() const { return provenance_; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }

    /// Subset given by ascending indices into this set; labels carried over.
    GroundSet subset_by_index(std::span<const std::size_t> indices, std::string provenance) const;
    /// Subset given by member values (any order); throws if a value is not a member.
    GroundSet subset_by_value(std::span<const u64> values, std::string provenance) const;

    friend bool operator==(const GroundSet& a, const GroundSet& b) { return a.elements_ == b.elements_; }

private:
    std::vector<u64> elements_;
    std::vector<std::vector<u64>> labels_;
    LabelKind label_kind_ = LabelKind::None;
    std::string provenance_;
};

/// Upper end of the large-prime range: floor(n^2 / ln n).
u64 pq_upper_limit(u64 n);

/// {p*q : p prime <= n < q prime <= floor(n^2/ln n)}, labelled (p, q).
GroundSet build_pq_set(u64 n);
/// Distinct products of three primes <= N (repetition allowed), labelled by the sorted triple.
GroundSet build_triple_prime_set(u64 N);
/// {(2i-1)*2^j : 1 <= i <= N^2, 1 <= j <= N}, labelled (i, j).
GroundSet build_bw_set(u64 N);
/// {1, ..., N}.
GroundSet build_interval(u64 N);

enum class SampleKind { FixedSize, Independent };

struct SampleSpec {
    SampleKind kind = SampleKind::FixedSize;
    std::size_t m = 0;   // FixedSize
    double p = 0.0;      // Independent
    std::uint64_t seed = 0;

    static SampleSpec fixed(std::size_t m, std::uint64_t seed) { return {SampleKind::FixedSize, m, 0.0, seed}; }
    static SampleSpec independent(double p, std::uint64_t seed) { return {SampleKind::Independent, 0, p, seed}; }
};

/// Fixed-size: partial Fisher-Yates over the sorted ground set (first m swaps).
/// Independent: one Bernoulli(p) draw per element in ascending order.
GroundSet sample_subset(const GroundSet& ground, const SampleSpec& spec);

/// Line format: `# provenance: ...` / `# labels: factors|bw-index` headers, then
/// one decimal element per line with an optional tab and comma-separated label.
void write_ground_set(std::ostream& os, const GroundSet& set);
GroundSet read_ground_set(std::istream& is);

} // namespace sidonlab
