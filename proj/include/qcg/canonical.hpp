#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "qcg/graph.hpp"

namespace qcg {

struct CanonicalForm {
    std::string canon;                           // graph6 of the canonical labeling
    std::array<std::uint8_t, kMaxVertices> relabeling{};  // input vertex -> canonical position
};

namespace detail {

// Comparable fingerprint of one labeled (and possibly vertex-colored) graph:
// the initial color of each vertex listed in label order, then the upper
// triangle of the adjacency matrix. 496 bits cover n = 32.
struct Encoding {
    std::array<std::uint8_t, kMaxVertices> colors{};
    std::array<std::uint64_t, 8> bits{};

    friend auto operator<=>(const Encoding&, const Encoding&) = default;
};

inline Encoding encode(const Graph& g, std::span<const int> perm,
                       std::span<const int> initial_colors) {
    Encoding e;
    std::array<int, kMaxVertices> inv{};
    for (int v = 0; v < g.n; ++v) inv[perm[v]] = v;
    for (int pos = 0; pos < g.n; ++pos)
        e.colors[pos] = static_cast<std::uint8_t>(initial_colors.empty() ? 0 : initial_colors[inv[pos]]);
    int bitindex = 0;
    for (int v = 1; v < g.n; ++v)
        for (int u = 0; u < v; ++u, ++bitindex)
            if (g.has_edge(inv[u], inv[v]))
                e.bits[bitindex >> 6] |= std::uint64_t{1} << (bitindex & 63);
    return e;
}

// Equitable refinement: repeatedly re-color by (current color, neighbor count
// in every color class) until the partition is stable. Colors are normalized
// to ranks 0..C-1 in signature order, which is isomorphism-invariant.
inline int refine_colors(const Graph& g, std::array<int, kMaxVertices>& colors) {
    int ncolors = 0;
    {
        std::map<int, int> rank;
        for (int v = 0; v < g.n; ++v) rank.emplace(colors[v], 0);
        for (auto& [c, r] : rank) r = ncolors++;
        for (int v = 0; v < g.n; ++v) colors[v] = rank[colors[v]];
    }
    while (ncolors < g.n) {
        std::array<std::uint32_t, kMaxVertices> cell_mask{};
        for (int v = 0; v < g.n; ++v) cell_mask[colors[v]] |= 1u << v;

        std::vector<std::vector<int>> sig(g.n);
        for (int v = 0; v < g.n; ++v) {
            sig[v].reserve(ncolors + 1);
            sig[v].push_back(colors[v]);
            for (int c = 0; c < ncolors; ++c)
                sig[v].push_back(std::popcount(g.adj[v] & cell_mask[c]));
        }
        std::map<std::vector<int>, int> rank;
        for (int v = 0; v < g.n; ++v) rank.emplace(sig[v], 0);
        int next = 0;
        for (auto& [s, r] : rank) r = next++;
        if (next == ncolors) break;
        ncolors = next;
        for (int v = 0; v < g.n; ++v) colors[v] = rank[sig[v]];
    }
    return ncolors;
}

struct CanonResult {
    Encoding enc;
    std::array<int, kMaxVertices> perm{};         // vertex -> canonical position
    std::array<int, kMaxVertices> root_colors{};  // stable refinement of the input coloring
};

class CanonSearcher {
public:
    CanonSearcher(const Graph& g, std::span<const int> initial_colors)
        : g_(g), initial_(initial_colors.begin(), initial_colors.end()) {}

    CanonResult run() {
        std::array<int, kMaxVertices> colors{};
        for (int v = 0; v < g_.n; ++v) colors[v] = initial_.empty() ? 0 : initial_[v];
        int ncolors = refine_colors(g_, colors);
        CanonResult res;
        res.root_colors = colors;
        have_best_ = false;
        descend(colors, ncolors);
        res.enc = best_;
        res.perm = best_perm_;
        return res;
    }

private:
    void descend(const std::array<int, kMaxVertices>& colors, int ncolors) {
        if (ncolors == g_.n) {
            std::array<int, kMaxVertices> perm{};
            for (int v = 0; v < g_.n; ++v) perm[v] = colors[v];
            Encoding enc = encode(g_, std::span<const int>(perm.data(), g_.n),
                                  std::span<const int>(initial_.data(), initial_.size()));
            if (!have_best_ || enc < best_ ||
                (enc == best_ && std::lexicographical_compare(perm.begin(), perm.begin() + g_.n,
                                                              best_perm_.begin(), best_perm_.begin() + g_.n))) {
                best_ = enc;
                best_perm_ = perm;
                have_best_ = true;
            }
            return;
        }
        // Target cell: the non-singleton class with the smallest color value.
        std::array<int, kMaxVertices> count{};
        for (int v = 0; v < g_.n; ++v) ++count[colors[v]];
        int target = 0;
        while (count[target] < 2) ++target;
        for (int v = 0; v < g_.n; ++v) {
            if (colors[v] != target) continue;
            std::array<int, kMaxVertices> child{};
            for (int u = 0; u < g_.n; ++u) child[u] = colors[u] * 2 + 1;
            child[v] = colors[v] * 2;  // individualized vertex precedes its cell
            int nc = refine_colors(g_, child);
            descend(child, nc);
        }
    }

    const Graph& g_;
    std::vector<int> initial_;
    Encoding best_{};
    std::array<int, kMaxVertices> best_perm_{};
    bool have_best_ = false;
};

inline CanonResult canonicalize(const Graph& g, std::span<const int> initial_colors = {}) {
    return CanonSearcher(g, initial_colors).run();
}

}  // namespace detail

inline Graph canonical_graph(const Graph& g, const detail::CanonResult& res) {
    return permuted(g, std::span<const int>(res.perm.data(), g.n));
}

inline CanonicalForm canonical_form(const Graph& g) {
    auto res = detail::canonicalize(g);
    CanonicalForm cf;
    cf.canon = emit_graph6(canonical_graph(g, res));
    for (int v = 0; v < g.n; ++v) cf.relabeling[v] = static_cast<std::uint8_t>(res.perm[v]);
    return cf;
}

inline bool are_isomorphic(const Graph& a, const Graph& b) {
    if (a.n != b.n) return false;
    return detail::canonicalize(a).enc == detail::canonicalize(b).enc;
}

// True iff some automorphism of g maps u to v, decided by comparing the
// canonical forms of g with u (resp. v) individualized.
inline bool same_orbit(const Graph& g, int u, int v) {
    if (u == v) return true;
    std::vector<int> cu(g.n, 1), cv(g.n, 1);
    cu[u] = 0;
    cv[v] = 0;
    return detail::canonicalize(g, cu).enc == detail::canonicalize(g, cv).enc;
}

}  // namespace qcg
