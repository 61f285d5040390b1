#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcg {

inline constexpr int kMaxVertices = 32;

// Simple undirected graph on at most 32 vertices. Adjacency is one 32-bit
// mask per vertex so neighborhood intersections are single AND instructions.
// Rows at index >= n are kept zero so default comparison works.
struct Graph {
    int n = 0;
    std::array<std::uint32_t, kMaxVertices> adj{};

    Graph() = default;
    explicit Graph(int vertices) : n(vertices) {
        if (n < 1 || n > kMaxVertices)
            throw std::invalid_argument("Graph: vertex count must be in 1..32");
    }

    bool has_edge(int u, int v) const { return (adj[u] >> v) & 1u; }

    void add_edge(int u, int v) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::out_of_range("Graph::add_edge: vertex out of range");
        if (u == v) throw std::invalid_argument("Graph::add_edge: self-loop");
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }

    int degree(int v) const { return std::popcount(adj[v]); }

    int edge_count() const {
        int total = 0;
        for (int v = 0; v < n; ++v) total += degree(v);
        return total / 2;
    }

    std::uint32_t vertex_mask() const {
        return n == 32 ? ~0u : (1u << n) - 1u;
    }

    friend bool operator==(const Graph&, const Graph&) = default;
};

inline Graph from_edge_list(int n, std::span<const std::pair<int, int>> edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

inline Graph from_edge_list(int n, std::initializer_list<std::pair<int, int>> edges) {
    return from_edge_list(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
}

inline std::vector<std::pair<int, int>> edge_list(const Graph& g) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (g.has_edge(u, v)) edges.emplace_back(u, v);
    return edges;
}

inline Graph complement(const Graph& g) {
    Graph c(g.n);
    const std::uint32_t all = g.vertex_mask();
    for (int v = 0; v < g.n; ++v)
        c.adj[v] = (~g.adj[v] & all) & ~(1u << v);
    return c;
}

inline bool is_connected(const Graph& g) {
    if (g.n < 1) throw std::invalid_argument("is_connected: empty graph");
    std::uint32_t seen = 1u;
    std::uint32_t frontier = 1u;
    while (frontier) {
        std::uint32_t next = 0;
        while (frontier) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            next |= g.adj[v];
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == g.vertex_mask();
}

// Relabel: perm[old vertex] = new vertex.
inline Graph permuted(const Graph& g, std::span<const int> perm) {
    Graph p(g.n);
    for (int u = 0; u < g.n; ++u) {
        std::uint32_t row = g.adj[u];
        while (row) {
            int v = std::countr_zero(row);
            row &= row - 1;
            p.adj[perm[u]] |= 1u << perm[v];
        }
    }
    return p;
}

// All k-subsets inducing complete subgraphs, in lexicographic order.
inline std::vector<std::vector<int>> cliques_of_size(const Graph& g, int k) {
    if (k < 1 || k > g.n) throw std::invalid_argument("cliques_of_size: k out of range");
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start, std::uint32_t common) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        int need = k - static_cast<int>(cur.size());
        for (int v = start; v + need <= g.n; ++v) {
            if (!((common >> v) & 1u)) continue;
            cur.push_back(v);
            self(self, v + 1, common & g.adj[v]);
            cur.pop_back();
        }
    };
    rec(rec, 0, g.vertex_mask());
    return out;
}

// graph6 text format, n <= 62 variant: first byte n+63, then the upper
// triangle read column by column (x(0,1), x(0,2), x(1,2), x(0,3), ...)
// packed MSB-first into 6-bit groups, each emitted as value+63.
inline std::string emit_graph6(const Graph& g) {
    std::string out;
    out.push_back(static_cast<char>(g.n + 63));
    int bitpos = 0;
    int acc = 0;
    for (int v = 1; v < g.n; ++v) {
        for (int u = 0; u < v; ++u) {
            acc = (acc << 1) | (g.has_edge(u, v) ? 1 : 0);
            if (++bitpos == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                bitpos = 0;
            }
        }
    }
    if (bitpos > 0) out.push_back(static_cast<char>((acc << (6 - bitpos)) + 63));
    return out;
}

inline Graph parse_graph6(std::string_view text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
        text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("graph6: empty input");
    int n = static_cast<int>(static_cast<unsigned char>(text[0])) - 63;
    if (n < 1) throw std::invalid_argument("graph6: malformed header");
    if (n > kMaxVertices) throw std::invalid_argument("graph6: vertex count above 32");
    const int bits = n * (n - 1) / 2;
    const int bytes = (bits + 5) / 6;
    if (static_cast<int>(text.size()) != 1 + bytes)
        throw std::invalid_argument("graph6: wrong encoding length");
    Graph g(n);
    int bitindex = 0;
    for (int i = 0; i < bytes; ++i) {
        int val = static_cast<int>(static_cast<unsigned char>(text[1 + i])) - 63;
        if (val < 0 || val > 63) throw std::invalid_argument("graph6: byte out of range");
        for (int b = 5; b >= 0; --b, ++bitindex) {
            int bit = (val >> b) & 1;
            if (bitindex >= bits) {
                if (bit) throw std::invalid_argument("graph6: nonzero padding bits");
                continue;
            }
            if (bit) {
                // bitindex enumerates the upper triangle column by column
                int v = 1;
                int idx = bitindex;
                while (idx >= v) { idx -= v; ++v; }
                g.add_edge(idx, v);
            }
        }
    }
    return g;
}

inline std::vector<int> set_to_vertices(std::uint32_t mask) {
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

}  // namespace qcg
