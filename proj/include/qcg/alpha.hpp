#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcg/graph.hpp"

namespace qcg {

struct AlphaResult {
    int alpha = 0;
    std::uint32_t witness = 0;  // one maximum independent set, as a bitmask
    std::optional<std::vector<std::uint32_t>> all_maximum_sets;
};

namespace detail {

// Greedy partition of the candidate set into cliques. The number of cliques
// bounds the independence number of the induced subgraph from above.
inline int clique_cover_bound(const Graph& g, std::uint32_t cand) {
    std::uint32_t cliques[kMaxVertices];
    int count = 0;
    std::uint32_t rest = cand;
    while (rest) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        int placed = -1;
        for (int c = 0; c < count; ++c) {
            if ((cliques[c] & ~g.adj[v]) == 0) { placed = c; break; }
        }
        if (placed < 0) { placed = count; cliques[count++] = 0; }
        cliques[placed] |= 1u << v;
    }
    return count;
}

struct MisSolver {
    const Graph& g;
    int best = 0;
    std::uint32_t best_set = 0;

    void expand(std::uint32_t cand, std::uint32_t cur, int size) {
        if (!cand) {
            if (size > best) { best = size; best_set = cur; }
            return;
        }
        if (size + clique_cover_bound(g, cand) <= best) return;
        // branch on a maximum-degree vertex of the candidate subgraph,
        // ties broken by lowest index
        int pick = -1, pick_deg = -1;
        std::uint32_t rest = cand;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            int d = std::popcount(g.adj[v] & cand);
            if (d > pick_deg) { pick_deg = d; pick = v; }
        }
        const std::uint32_t bit = 1u << pick;
        expand(cand & ~g.adj[pick] & ~bit, cur | bit, size + 1);
        expand(cand & ~bit, cur, size);
    }
};

}  // namespace detail

inline int independence_number_value(const Graph& g) {
    detail::MisSolver solver{g};
    solver.expand(g.vertex_mask(), 0, 0);
    return solver.best;
}

// Exactly the independent sets of size alpha, in lexicographic order
// (sets compared as ascending vertex sequences).
inline std::vector<std::uint32_t> enumerate_maximum_sets(const Graph& g) {
    const int alpha = independence_number_value(g);
    std::vector<std::uint32_t> out;
    auto rec = [&](auto&& self, std::uint32_t cand, std::uint32_t cur, int size) -> void {
        if (size == alpha) { out.push_back(cur); return; }
        if (size + std::popcount(cand) < alpha) return;
        std::uint32_t rest = cand;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            self(self, rest & ~g.adj[v], cur | (1u << v), size + 1);
        }
    };
    rec(rec, g.vertex_mask(), 0, 0);
    return out;
}

inline AlphaResult independence_number(const Graph& g, bool with_all_maximum_sets = false) {
    detail::MisSolver solver{g};
    solver.expand(g.vertex_mask(), 0, 0);
    AlphaResult res;
    res.alpha = solver.best;
    res.witness = solver.best_set;
    if (with_all_maximum_sets) res.all_maximum_sets = enumerate_maximum_sets(g);
    return res;
}

}  // namespace qcg
