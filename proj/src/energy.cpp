#include "sidonlab/energy.hpp"

#include <algorithm>
#include <cmath>

namespace sidonlab {

// ---------------------------------------------------------------- Rational

std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

u128 gcd_u128(u128 a, u128 b) {
    while (b != 0) {
        const u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational::Rational(u128 num, u128 den) : num_(num), den_(den) {
    if (den == 0) throw DomainError("zero denominator");
    const u128 g = gcd_u128(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    if (num_ == 0) den_ = 1;
}

double Rational::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const { return to_string(num_) + "/" + to_string(den_); }

// ---------------------------------------------------------------- modes

std::string_view mode_name(Mode mode) { return mode == Mode::Additive ? "additive" : "multiplicative"; }

Mode parse_mode(std::string_view text) {
    if (text == "additive" || text == "add" || text == "+") return Mode::Additive;
    if (text == "multiplicative" || text == "mul" || text == "*") return Mode::Multiplicative;
    throw DomainError("unknown mode '" + std::string(text) + "' (expected additive or multiplicative)");
}

// ---------------------------------------------------------------- pair histogram

namespace {

// Dense counting is used for additive sums up to this value.
constexpr u64 kDenseSumLimit = u64{1} << 24;

void histogram_dense(const GroundSet& A, const std::function<void(u64, u64, bool)>& visit) {
    const auto a = A.elements();
    const u64 top = 2 * A.max();
    std::vector<std::uint32_t> counts(top + 1, 0);
    std::vector<char> diag(top + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const u64 ai = a[i];
        diag[2 * ai] = 1;
        for (std::size_t j = i; j < a.size(); ++j) ++counts[ai + a[j]];
    }
    for (u64 s = 0; s <= top; ++s) {
        if (counts[s]) visit(s, counts[s], diag[s] != 0);
    }
}

void histogram_sorted(const GroundSet& A, Mode mode, const std::function<void(u64, u64, bool)>& visit) {
    const auto a = A.elements();
    const std::size_t k = a.size();
    const std::size_t off = k * (k - 1) / 2;
    if (off + k > kMaxSortedPairs) {
        throw DomainError("set of size " + std::to_string(k) + " is too large for an exact pair histogram");
    }
    // Values rise with the largest operand, so overflow is decided by the top pair.
    combine(a[k - 1], a[k - 1], mode);
    std::vector<u64> offdiag;
    offdiag.reserve(off);
    std::vector<u64> diag;
    diag.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        diag.push_back(combine(a[i], a[i], mode));
        for (std::size_t j = i + 1; j < k; ++j) offdiag.push_back(combine(a[i], a[j], mode));
    }
    std::sort(offdiag.begin(), offdiag.end());
    std::size_t x = 0;
    std::size_t d = 0;
    while (x < offdiag.size() || d < diag.size()) {
        u64 s;
        if (d == diag.size() || (x < offdiag.size() && offdiag[x] < diag[d])) {
            s = offdiag[x];
        } else {
            s = diag[d];
        }
        u64 pairs = 0;
        while (x < offdiag.size() && offdiag[x] == s) {
            ++pairs;
            ++x;
        }
        const bool has_diag = d < diag.size() && diag[d] == s;
        if (has_diag) {
            ++pairs;
            ++d;
        }
        visit(s, pairs, has_diag);
    }
}

} // namespace

void for_each_pair_class(const GroundSet& A, Mode mode,
                         const std::function<void(u64 value, u64 pairs, bool diagonal)>& visit) {
    if (A.empty()) throw DomainError("operation needs a nonempty set");
    if (mode == Mode::Additive && A.max() <= kDenseSumLimit / 2) {
        histogram_dense(A, visit);
    } else {
        histogram_sorted(A, mode, visit);
    }
}

GroundSet combined_set(const GroundSet& A, Mode mode) {
    std::vector<u64> out;
    for_each_pair_class(A, mode, [&](u64 s, u64, bool) { out.push_back(s); });
    return GroundSet::from_elements(std::move(out), std::string(mode == Mode::Additive ? "sumset" : "productset") +
                                                        " of " + A.provenance());
}

std::size_t combined_size(const GroundSet& A, Mode mode) {
    std::size_t n = 0;
    for_each_pair_class(A, mode, [&](u64, u64, bool) { ++n; });
    return n;
}

u64 energy(const GroundSet& A, Mode mode) {
    u128 total = 0;
    for_each_pair_class(A, mode, [&](u64, u64 pairs, bool diagonal) {
        const u128 r = 2 * static_cast<u128>(pairs) - (diagonal ? 1 : 0);
        total += r * r;
    });
    return narrow_u64(total);
}

u64 nontrivial_energy(const GroundSet& A, Mode mode) {
    return narrow_u64(static_cast<u128>(energy(A, mode)) - trivial_count(A.size()));
}

u128 violation_count(const GroundSet& A, Mode mode) {
    u128 v = 0;
    for_each_pair_class(A, mode, [&](u64, u64 pairs, bool) {
        v += static_cast<u128>(pairs) * (pairs - 1) / 2;
    });
    return v;
}

EnergyReport energy_report(const GroundSet& A) {
    EnergyReport r;
    r.set_size = A.size();
    const u128 m4 = static_cast<u128>(A.size()) * A.size() * A.size() * A.size();
    u128 e_add = 0;
    u64 sums = 0;
    for_each_pair_class(A, Mode::Additive, [&](u64, u64 pairs, bool diagonal) {
        const u128 c = 2 * static_cast<u128>(pairs) - (diagonal ? 1 : 0);
        e_add += c * c;
        ++sums;
    });
    u128 e_mul = 0;
    u64 products = 0;
    for_each_pair_class(A, Mode::Multiplicative, [&](u64, u64 pairs, bool diagonal) {
        const u128 c = 2 * static_cast<u128>(pairs) - (diagonal ? 1 : 0);
        e_mul += c * c;
        ++products;
    });
    r.energy_add = narrow_u64(e_add);
    r.energy_mul = narrow_u64(e_mul);
    r.nontrivial_add = narrow_u64(e_add - trivial_count(A.size()));
    r.nontrivial_mul = narrow_u64(e_mul - trivial_count(A.size()));
    r.sumset_size = sums;
    r.productset_size = products;
    r.cs_lower_add = Rational(m4, sums);
    r.cs_lower_mul = Rational(m4, products);
    return r;
}

// ---------------------------------------------------------------- random-model expectation

PatternCounts pattern_counts_enumerated(u64 n) {
    if (n > 100) throw DomainError("enumerated pattern counts are limited to n <= 100");
    PatternCounts counts{};
    for (u64 a = 1; a <= n; ++a) {
        for (u64 b = 1; b <= n; ++b) {
            for (u64 c = 1; c <= n; ++c) {
                if (a + b <= c || a + b - c > n) continue;
                const u64 d = a + b - c;
                u64 vals[4] = {a, b, c, d};
                std::sort(vals, vals + 4);
                const int distinct = 1 + (vals[1] != vals[0]) + (vals[2] != vals[1]) + (vals[3] != vals[2]);
                ++counts[static_cast<std::size_t>(distinct - 1)];
            }
        }
    }
    return counts;
}

PatternCounts pattern_counts_closed_form(u64 n) {
    PatternCounts counts{};
    const u128 N = n;
    counts[0] = N;
    counts[1] = n >= 1 ? 2 * N * (N - 1) : 0;
    // 3-term progressions x < y < z in [n]: floor((n-1)^2 / 4).
    const u128 aps = n >= 1 ? (N - 1) * (N - 1) / 4 : 0;
    counts[2] = 4 * aps;
    u128 four = 0;
    for (u64 s = 2; s <= 2 * n; ++s) {
        const u128 ordered = std::min<u64>(s - 1, 2 * n + 1 - s);
        const u128 u = ordered - (s % 2 == 0 ? 1 : 0);
        if (u >= 2) four += u * (u - 2);
    }
    counts[3] = four;
    return counts;
}

namespace {

u128 falling(u128 x, u64 k) {
    u128 r = 1;
    for (u64 t = 0; t < k; ++t) {
        if (x < t) return 0;
        r *= x - t;
    }
    return r;
}

Rational expected_from_patterns(u64 n, u64 m, u64 min_distinct) {
    if (n < 1) throw DomainError("expected energy needs n >= 1");
    if (m > n) throw DomainError("subset size m=" + std::to_string(m) + " exceeds n=" + std::to_string(n));
    const PatternCounts counts = n <= 100 ? pattern_counts_enumerated(n) : pattern_counts_closed_form(n);
    // P(k fixed distinct values all land in B) = C(n-k, m-k)/C(n, m) = m^(k)/n^(k),
    // put over the common denominator n^(K) with K = min(n, 4).
    const u64 K = std::min<u64>(n, 4);
    const u128 den = falling(n, K);
    u128 num = 0;
    for (u64 k = min_distinct; k <= K; ++k) {
        num += counts[k - 1] * falling(m, k) * falling(n - k, K - k);
    }
    return Rational(num, den);
}

} // namespace

Rational expected_energy_exact(u64 n, u64 m) { return expected_from_patterns(n, m, 1); }

Rational expected_nontrivial_energy_exact(u64 n, u64 m) { return expected_from_patterns(n, m, 3); }

// ---------------------------------------------------------------- small-set tables

PairTable::PairTable(const GroundSet& A, Mode mode) : k_(A.size()) {
    if (k_ > 8192) throw DomainError("pair table limited to 8192 elements");
    const auto a = A.elements();
    struct Entry {
        u64 value;
        std::uint32_t i, j;
    };
    std::vector<Entry> entries;
    entries.reserve(k_ * (k_ + 1) / 2);
    for (std::size_t i = 0; i < k_; ++i) {
        for (std::size_t j = i; j < k_; ++j) {
            entries.push_back({combine(a[i], a[j], mode), static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.value < y.value; });
    ids_.assign(k_ * k_, 0);
    for (const Entry& e : entries) {
        if (values_.empty() || values_.back() != e.value) {
            values_.push_back(e.value);
            multiplicity_.push_back(0);
        }
        const auto id = static_cast<std::uint32_t>(values_.size() - 1);
        ++multiplicity_.back();
        ids_[e.i * k_ + e.j] = id;
        ids_[e.j * k_ + e.i] = id;
    }
}

SubsetEnergy::SubsetEnergy(const PairTable& table)
    : table_(&table), counts_(table.num_ids(), 0), in_(table.size(), 0) {}

void SubsetEnergy::clear() {
    while (!members_.empty()) remove(members_.back());
}

u128 SubsetEnergy::add_delta(std::size_t i) const {
    u128 d = 0;
    for (std::size_t c : members_) {
        const u128 r = counts_[table_->id(i, c)];
        d += 4 * r + 4;
    }
    const u128 r = counts_[table_->id(i, i)];
    return d + 2 * r + 1;
}

u128 SubsetEnergy::remove_delta(std::size_t i) const {
    u128 d = 0;
    for (std::size_t c : members_) {
        if (c == i) continue;
        const u128 r = counts_[table_->id(i, c)];
        d += 4 * r - 4;
    }
    const u128 r = counts_[table_->id(i, i)];
    return d + 2 * r - 1;
}

void SubsetEnergy::add(std::size_t i) {
    if (in_[i]) return;
    energy_ += add_delta(i);
    for (std::size_t c : members_) counts_[table_->id(i, c)] += 2;
    counts_[table_->id(i, i)] += 1;
    members_.push_back(i);
    in_[i] = 1;
}

void SubsetEnergy::remove(std::size_t i) {
    if (!in_[i]) return;
    energy_ -= remove_delta(i);
    for (std::size_t c : members_) {
        if (c != i) counts_[table_->id(i, c)] -= 2;
    }
    counts_[table_->id(i, i)] -= 1;
    members_.erase(std::find(members_.begin(), members_.end(), i));
    in_[i] = 0;
}

} // namespace sidonlab
