#pragma once

#include "sidonlab/ground_set.hpp"
#include "sidonlab/audit.hpp"

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace sidonlab {

/// Bipartite graph on P (left) and Q (right); the edge (p, q) stands for the element p*q.
struct ProductGraph {
    std::vector<u64> left;                          // sorted, P
    std::vector<u64> right;                         // sorted, Q
    std::vector<std::pair<u64, u64>> edges;         // sorted (p, q)

    /// Throws DomainError unless P, Q are sorted and disjoint and every edge joins them.
    void validate() const;
};

/// Two left vertices p < p' sharing two right neighbours q < q'.
struct C4Witness {
    u64 p = 0, p2 = 0, q = 0, q2 = 0;
    friend bool operator==(const C4Witness&, const C4Witness&) = default;
    friend auto operator<=>(const C4Witness&, const C4Witness&) = default;
};

/// Graph of a two-prime labelled set (or of `subset`, a list of its members). The
/// vertex sets are all primes that appear in the ground set's labels, so a subset
/// keeps the full P and Q.
ProductGraph graph_from_pq(const GroundSet& A, std::optional<std::vector<u64>> subset = std::nullopt);

/// Codegree scan: left vertices ascending; for each, every pair of its right
/// neighbours is looked up in a triangular table holding the first left vertex seen
/// with that pair. Returns the lexicographically least (p, p', q, q').
std::optional<C4Witness> find_c4(const ProductGraph& G);

/// Largest e with e^2 <= |Q| (e + |P|^2).
u64 c4free_capacity(u64 size_p, u64 size_q);

/// Numerical check of the counting chain
///   (i)   |E|^2 <= |Q| * sum_q deg(q)^2
///   (ii)  sum_q deg(q)^2 = |E| + sum_{p != p'} codeg(p, p')   (ordered pairs)
///   (iii) sum_{p != p'} codeg(p, p') <= |P|^2                 (only when C4-free)
/// Check (iii) is reported with pass = nullopt when G contains a C4.
std::vector<AuditCheck> cs_chain_audit(const ProductGraph& G);

/// `P: ...` and `Q: ...` header lines, then one `p q` edge per line.
void write_graph(std::ostream& os, const ProductGraph& G);
ProductGraph read_graph(std::istream& is);

} // namespace sidonlab
