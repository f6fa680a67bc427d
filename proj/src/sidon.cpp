#include "sidonlab/sidon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace sidonlab {

std::optional<SidonWitness> sidon_check(const GroundSet& A, Mode mode) {
    if (A.empty()) throw DomainError("sidon check needs a nonempty set");
    const auto a = A.elements();
    std::unordered_map<u64, std::pair<u64, u64>> seen;
    seen.reserve(a.size() * (a.size() + 1) / 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i; j < a.size(); ++j) {
            const u64 s = combine(a[i], a[j], mode);
            auto [it, fresh] = seen.try_emplace(s, a[i], a[j]);
            if (!fresh) return SidonWitness{it->second.first, it->second.second, a[i], a[j]};
        }
    }
    return std::nullopt;
}

u64 sidon_size_bound(u64 pair_values) {
    auto m = static_cast<u64>((std::sqrt(8.0 * static_cast<double>(pair_values) + 1.0) - 1.0) / 2.0);
    while (m > 0 && static_cast<u128>(m) * (m + 1) / 2 > pair_values) --m;
    while (static_cast<u128>(m + 1) * (m + 2) / 2 <= pair_values) ++m;
    return m;
}

u64 sumset_cardinality_bound(const GroundSet& A, Mode mode) {
    return sidon_size_bound(combined_size(A, mode));
}

GroundSet greedy_sidon(const GroundSet& A, Mode mode) {
    if (A.empty()) throw DomainError("greedy scan needs a nonempty set");
    std::vector<u64> kept;
    std::unordered_set<u64> used;
    std::vector<u64> fresh;
    for (u64 x : A.elements()) {
        fresh.clear();
        bool ok = true;
        for (u64 c : kept) {
            const u64 s = combine(x, c, mode);
            if (used.count(s)) {
                ok = false;
                break;
            }
            fresh.push_back(s);
        }
        if (!ok) continue;
        const u64 sq = combine(x, x, mode);
        if (used.count(sq)) continue;
        fresh.push_back(sq);
        used.insert(fresh.begin(), fresh.end());
        kept.push_back(x);
    }
    return A.subset_by_value(kept, "greedy " + std::string(mode_name(mode)) + " of " + A.provenance());
}

namespace {

class BranchAndBound {
public:
    BranchAndBound(const GroundSet& A, Mode mode, std::uint64_t budget)
        : A_(A), table_(A, mode), budget_(budget), used_(table_.num_ids(), 0), stamp_(table_.num_ids(), 0),
          head_(table_.num_ids(), 0) {}

    // Suffixes of the branching order are solved from the back; the optimum of
    // each suffix caps every later search that draws only from it.
    MaxSubsetResult run(const GroundSet& seed_solution) {
        const std::size_t k = A_.size();
        std::vector<u64> degree(k, 0);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t c = 0; c < k; ++c) degree[i] += table_.multiplicity(table_.id(i, c)) - 1;
        }
        std::vector<std::size_t> order(k);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return degree[x] > degree[y]; });
        pos_.assign(k, 0);
        for (std::size_t r = 0; r < k; ++r) pos_[order[r]] = r;
        suffix_best_.assign(k + 1, 0);

        std::vector<std::size_t> best;
        for (u64 v : seed_solution.elements()) {
            best.push_back(static_cast<std::size_t>(
                std::lower_bound(A_.elements().begin(), A_.elements().end(), v) - A_.elements().begin()));
        }
        std::vector<std::size_t> cand;
        for (std::size_t r = k; r-- > 0;) {
            const std::size_t x = order[r];
            target_ = suffix_best_[r + 1];
            found_ = false;
            chosen_ = {x};
            used_[table_.id(x, x)] = 1;
            cand.clear();
            for (std::size_t t = r + 1; t < k; ++t) {
                const std::size_t y = order[t];
                if (!used_[table_.id(y, y)] && !used_[table_.id(y, x)]) cand.push_back(y);
            }
            search(cand);
            used_[table_.id(x, x)] = 0;
            if (exhausted_) break;
            suffix_best_[r] = target_ + (found_ ? 1 : 0);
            if (found_ && witness_.size() > best.size()) best = witness_;
        }

        MaxSubsetResult res;
        std::sort(best.begin(), best.end());
        res.subset = A_.subset_by_index(best, "max sidon subset of " + A_.provenance());
        res.size = best.size();
        res.nodes_explored = nodes_;
        res.budget_exhausted = exhausted_;
        res.optimal = !exhausted_;
        return res;
    }

private:
    // Candidates are kept compatible with the chosen elements: their pair values
    // with chosen elements and with themselves are unoccupied and distinct. Two
    // candidates conflict when they cannot both join: their mutual pair value is
    // occupied, or one of their new pair values coincide. Returns the conflict
    // rows, `words` 64-bit words per candidate.
    std::vector<std::uint64_t> conflicts(const std::vector<std::size_t>& cand, std::size_t words) {
        const std::size_t n = cand.size();
        std::vector<std::uint64_t> rows(n * words, 0);
        auto link = [&](std::size_t a, std::size_t b) {
            rows[a * words + b / 64] |= std::uint64_t{1} << (b % 64);
            rows[b * words + a / 64] |= std::uint64_t{1} << (a % 64);
        };
        ++epoch_;
        chain_.clear();
        auto record = [&](std::uint32_t id, std::size_t t) {
            std::uint32_t prev = stamp_[id] == epoch_ ? head_[id] : kNoLink;
            for (std::uint32_t l = prev; l != kNoLink; l = chain_[l].second) link(chain_[l].first, t);
            stamp_[id] = epoch_;
            head_[id] = static_cast<std::uint32_t>(chain_.size());
            chain_.push_back({static_cast<std::uint32_t>(t), prev});
        };
        for (std::size_t t = 0; t < n; ++t) {
            const std::size_t y = cand[t];
            record(table_.id(y, y), t);
            for (std::size_t c : chosen_) record(table_.id(y, c), t);
            for (std::size_t u = t + 1; u < n; ++u) {
                if (used_[table_.id(y, cand[u])]) link(t, u);
            }
        }
        return rows;
    }

    // Greedy partition of the candidates, from the back, into groups of pairwise
    // conflicting elements; at most one element per group can join, so
    // result[t] bounds how many of cand[t..] can be added.
    std::vector<std::size_t> group_bounds(const std::vector<std::uint64_t>& rows, std::size_t n, std::size_t words) {
        std::vector<std::uint64_t> groups;
        std::vector<std::size_t> bound(n + 1, 0);
        for (std::size_t t = n; t-- > 0;) {
            const std::uint64_t* row = &rows[t * words];
            bool placed = false;
            for (std::size_t g = 0; g * words < groups.size() && !placed; ++g) {
                std::uint64_t* grp = &groups[g * words];
                bool all = true;
                for (std::size_t w = 0; w < words && all; ++w) all = (grp[w] & ~row[w]) == 0;
                if (all) {
                    grp[t / 64] |= std::uint64_t{1} << (t % 64);
                    placed = true;
                }
            }
            if (!placed) {
                groups.resize(groups.size() + words, 0);
                groups[groups.size() - words + t / 64] |= std::uint64_t{1} << (t % 64);
            }
            bound[t] = groups.size() / words;
        }
        return bound;
    }

    // Looks for a subset larger than target_; stops at the first one.
    void search(const std::vector<std::size_t>& cand) {
        if (exhausted_ || found_) return;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return;
        }
        if (chosen_.size() > target_) {
            found_ = true;
            witness_ = chosen_;
            return;
        }
        const std::size_t n = cand.size();
        if (n == 0) return;
        if (chosen_.size() + n <= target_) return;
        if (chosen_.size() + suffix_best_[pos_[cand.front()]] <= target_) return;
        const std::size_t words = (n + 63) / 64;
        const std::vector<std::uint64_t> rows = conflicts(cand, words);
        const std::vector<std::size_t> bound = group_bounds(rows, n, words);

        std::vector<std::size_t> next;
        std::vector<std::uint32_t> marked;
        for (std::size_t t = 0; t < n; ++t) {
            const std::size_t x = cand[t];
            if (chosen_.size() + bound[t] <= target_) return;
            if (chosen_.size() + suffix_best_[pos_[x]] <= target_) return;
            marked.clear();
            for (std::size_t c : chosen_) marked.push_back(table_.id(x, c));
            marked.push_back(table_.id(x, x));
            for (std::uint32_t id : marked) used_[id] = 1;
            chosen_.push_back(x);

            next.clear();
            const std::uint64_t* row = &rows[t * words];
            for (std::size_t u = t + 1; u < n; ++u) {
                if (!(row[u / 64] >> (u % 64) & 1)) next.push_back(cand[u]);
            }
            search(next);

            chosen_.pop_back();
            for (std::uint32_t id : marked) used_[id] = 0;
            if (exhausted_ || found_) return;
        }
    }

    static constexpr std::uint32_t kNoLink = 0xFFFFFFFFu;

    const GroundSet& A_;
    PairTable table_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
    bool found_ = false;
    std::size_t target_ = 0;
    std::vector<char> used_;
    std::vector<std::uint64_t> stamp_;
    std::vector<std::uint32_t> head_;
    std::uint64_t epoch_ = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> chain_;
    std::vector<std::size_t> pos_;
    std::vector<std::size_t> suffix_best_;
    std::vector<std::size_t> chosen_;
    std::vector<std::size_t> witness_;
};

} // namespace

MaxSubsetResult max_sidon_subset(const GroundSet& A, Mode mode, std::uint64_t node_budget) {
    if (A.empty()) throw DomainError("max sidon subset needs a nonempty set");
    if (node_budget < 1) throw DomainError("node budget must be at least 1");
    BranchAndBound bb(A, mode, node_budget);
    return bb.run(greedy_sidon(A, mode));
}

DeletionResult deletion_sidon(const GroundSet& A, Mode mode, std::uint64_t seed) {
    if (A.empty()) throw DomainError("deletion needs a nonempty set");
    DeletionResult res;
    res.violations = violation_count(A, mode);
    if (res.violations > 0) {
        const double ratio = static_cast<double>(A.size()) / (2.0 * static_cast<double>(res.violations));
        res.p = std::min(1.0, std::cbrt(ratio));
    }
    const GroundSet sample = sample_subset(A, SampleSpec::independent(res.p, seed));
    res.sampled = sample.size();

    const auto s = sample.elements();
    if (s.size() * (s.size() + 1) / 2 > kMaxSortedPairs) throw DomainError("sampled subset too large for deletion");
    struct PairVal {
        u64 value;
        std::uint32_t i, j;
    };
    std::vector<PairVal> pairs;
    pairs.reserve(s.size() * (s.size() + 1) / 2);
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i; j < s.size(); ++j) {
            pairs.push_back({combine(s[i], s[j], mode), static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const PairVal& x, const PairVal& y) { return x.value < y.value; });

    std::vector<char> alive(s.size(), 1);
    for (std::size_t lo = 0; lo < pairs.size();) {
        std::size_t hi = lo;
        while (hi < pairs.size() && pairs[hi].value == pairs[lo].value) ++hi;
        for (std::size_t x = lo; x < hi; ++x) {
            for (std::size_t y = x + 1; y < hi; ++y) {
                const std::uint32_t members[4] = {pairs[x].i, pairs[x].j, pairs[y].i, pairs[y].j};
                bool intact = true;
                for (std::uint32_t m : members) intact = intact && alive[m];
                if (!intact) continue;
                alive[*std::max_element(members, members + 4)] = 0;
                ++res.deleted;
            }
        }
        lo = hi;
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (alive[i]) keep.push_back(i);
    }
    res.subset = sample.subset_by_index(keep, "deletion " + std::string(mode_name(mode)) + " seed=" +
                                                  std::to_string(seed) + " of " + A.provenance());
    if (!res.subset.empty() && !is_sidon(res.subset, mode)) {
        throw std::logic_error("deletion left a violation behind");
    }
    return res;
}

} // namespace sidonlab
