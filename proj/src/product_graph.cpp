#include "sidonlab/product_graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace sidonlab {

void ProductGraph::validate() const {
    if (!std::is_sorted(left.begin(), left.end()) || !std::is_sorted(right.begin(), right.end())) {
        throw DomainError("graph vertex lists must be sorted");
    }
    for (u64 p : left) {
        if (std::binary_search(right.begin(), right.end(), p)) {
            throw DomainError("left and right vertex sets must be disjoint (shared " + std::to_string(p) + ")");
        }
    }
    for (auto [p, q] : edges) {
        if (!std::binary_search(left.begin(), left.end(), p) || !std::binary_search(right.begin(), right.end(), q)) {
            throw DomainError("edge (" + std::to_string(p) + ", " + std::to_string(q) + ") leaves the vertex sets");
        }
    }
}

ProductGraph graph_from_pq(const GroundSet& A, std::optional<std::vector<u64>> subset) {
    if (A.label_kind() != LabelKind::PrimeFactors) {
        throw DomainError("product graph needs elements labelled by their two prime factors");
    }
    ProductGraph G;
    for (std::size_t k = 0; k < A.size(); ++k) {
        const auto& lab = A.label(k);
        if (lab.size() != 2) {
            throw DomainError("element " + std::to_string(A[k]) + " is not labelled by two primes");
        }
        G.left.push_back(lab[0]);
        G.right.push_back(lab[1]);
    }
    auto dedup = [](std::vector<u64>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedup(G.left);
    dedup(G.right);

    std::vector<u64> members = subset ? *subset : A.values();
    for (u64 x : members) {
        const auto& lab = A.label_of(x);
        G.edges.emplace_back(lab[0], lab[1]);
    }
    std::sort(G.edges.begin(), G.edges.end());
    G.edges.erase(std::unique(G.edges.begin(), G.edges.end()), G.edges.end());
    G.validate();
    return G;
}

namespace {

struct Adjacency {
    std::vector<std::vector<std::size_t>> left_nbrs;  // right indices, ascending
    std::vector<u64> right_degree;
};

Adjacency adjacency(const ProductGraph& G) {
    Adjacency adj;
    adj.left_nbrs.resize(G.left.size());
    adj.right_degree.assign(G.right.size(), 0);
    for (auto [p, q] : G.edges) {
        const auto pi = static_cast<std::size_t>(std::lower_bound(G.left.begin(), G.left.end(), p) - G.left.begin());
        const auto qi = static_cast<std::size_t>(std::lower_bound(G.right.begin(), G.right.end(), q) - G.right.begin());
        adj.left_nbrs[pi].push_back(qi);
        ++adj.right_degree[qi];
    }
    for (auto& n : adj.left_nbrs) std::sort(n.begin(), n.end());
    return adj;
}

} // namespace

std::optional<C4Witness> find_c4(const ProductGraph& G) {
    const Adjacency adj = adjacency(G);
    const std::size_t nq = G.right.size();
    // Slot of the right pair (a, b), a < b, in row-major upper-triangular order.
    auto slot = [nq](std::size_t a, std::size_t b) { return a * nq - a * (a + 1) / 2 + (b - a - 1); };
    std::vector<std::int64_t> first_left(nq * (nq > 0 ? nq - 1 : 0) / 2, -1);
    std::optional<C4Witness> best;
    for (std::size_t pi = 0; pi < adj.left_nbrs.size(); ++pi) {
        const auto& nb = adj.left_nbrs[pi];
        for (std::size_t x = 0; x < nb.size(); ++x) {
            for (std::size_t y = x + 1; y < nb.size(); ++y) {
                auto& owner = first_left[slot(nb[x], nb[y])];
                if (owner < 0) {
                    owner = static_cast<std::int64_t>(pi);
                    continue;
                }
                const C4Witness w{G.left[static_cast<std::size_t>(owner)], G.left[pi], G.right[nb[x]], G.right[nb[y]]};
                if (!best || w < *best) best = w;
            }
        }
    }
    return best;
}

u64 c4free_capacity(u64 size_p, u64 size_q) {
    if (size_p < 1 || size_q < 1) throw DomainError("capacity needs |P|, |Q| >= 1");
    const double P = static_cast<double>(size_p);
    const double Q = static_cast<double>(size_q);
    auto e = static_cast<u64>((Q + std::sqrt(Q * Q + 4.0 * Q * P * P)) / 2.0);
    const u128 q = size_q;
    const u128 p2 = static_cast<u128>(size_p) * size_p;
    auto fits = [&](u64 v) { return static_cast<u128>(v) * v <= q * (v + p2); };
    while (e > 0 && !fits(e)) --e;
    while (fits(e + 1)) ++e;
    return e;
}

std::vector<AuditCheck> cs_chain_audit(const ProductGraph& G) {
    const Adjacency adj = adjacency(G);
    const u64 edges = G.edges.size();
    u64 sum_deg_sq = 0;
    for (u64 d : adj.right_degree) sum_deg_sq += d * d;
    // Ordered pairs p != p', counted from the left side.
    u64 codeg = 0;
    for (std::size_t x = 0; x < adj.left_nbrs.size(); ++x) {
        for (std::size_t y = x + 1; y < adj.left_nbrs.size(); ++y) {
            const auto& a = adj.left_nbrs[x];
            const auto& b = adj.left_nbrs[y];
            std::size_t i = 0;
            std::size_t j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i] == b[j]) {
                    codeg += 2;
                    ++i;
                    ++j;
                } else if (a[i] < b[j]) {
                    ++i;
                } else {
                    ++j;
                }
            }
        }
    }
    const u64 size_q = G.right.size();
    const u64 size_p = G.left.size();
    const bool c4_free = !find_c4(G).has_value();

    std::vector<AuditCheck> out;
    const u64 lhs1 = edges * edges;
    const u64 rhs1 = size_q * sum_deg_sq;
    out.push_back({"edges_squared_le_Q_times_sum_deg_sq", lhs1, rhs1, lhs1 <= rhs1});
    out.push_back({"sum_deg_sq_eq_edges_plus_codegrees", sum_deg_sq, edges + codeg, sum_deg_sq == edges + codeg});
    const u64 rhs3 = size_p * size_p;
    out.push_back({"codegrees_le_P_squared", codeg, rhs3, c4_free ? std::optional<bool>(codeg <= rhs3) : std::nullopt});
    return out;
}

void write_graph(std::ostream& os, const ProductGraph& G) {
    os << "P:";
    for (u64 p : G.left) os << ' ' << p;
    os << "\nQ:";
    for (u64 q : G.right) os << ' ' << q;
    os << '\n';
    for (auto [p, q] : G.edges) os << p << ' ' << q << '\n';
}

ProductGraph read_graph(std::istream& is) {
    ProductGraph G;
    bool have_p = false;
    bool have_q = false;
    std::string line;
    auto parse_list = [](const std::string& rest) {
        std::vector<u64> v;
        std::istringstream ss(rest);
        u64 x;
        while (ss >> x) v.push_back(x);
        if (!ss.eof()) throw DomainError("malformed vertex list: " + rest);
        return v;
    };
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("P:", 0) == 0) {
            G.left = parse_list(line.substr(2));
            have_p = true;
        } else if (line.rfind("Q:", 0) == 0) {
            G.right = parse_list(line.substr(2));
            have_q = true;
        } else {
            std::istringstream ss(line);
            u64 p = 0;
            u64 q = 0;
            std::string extra;
            if (!(ss >> p >> q) || (ss >> extra)) throw DomainError("malformed edge line: " + line);
            G.edges.emplace_back(p, q);
        }
    }
    if (!have_p || !have_q) throw DomainError("graph file needs P: and Q: header lines");
    std::sort(G.left.begin(), G.left.end());
    std::sort(G.right.begin(), G.right.end());
    std::sort(G.edges.begin(), G.edges.end());
    G.edges.erase(std::unique(G.edges.begin(), G.edges.end()), G.edges.end());
    G.validate();
    return G;
}

} // namespace sidonlab
