#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <random>

#include "qcg/canonical.hpp"
#include "qcg/catalog.hpp"
#include "qcg/graph.hpp"

using namespace qcg;

namespace {

Graph random_permutation_of(std::mt19937& rng, const Graph& g) {
    std::vector<int> perm(g.n);
    for (int i = 0; i < g.n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    return permuted(g, perm);
}

// Brute-force isomorphism check by trying every permutation.
bool brute_isomorphic(const Graph& a, const Graph& b) {
    if (a.n != b.n || a.edge_count() != b.edge_count()) return false;
    std::vector<int> perm(a.n);
    for (int i = 0; i < a.n; ++i) perm[i] = i;
    do {
        if (permuted(a, perm) == b) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

Graph graph_from_mask(int n, std::uint64_t mask) {
    Graph g(n);
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if ((mask >> bit) & 1) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("relabeled cycles agree, path differs from triangle") {
    Graph c5a = from_edge_list(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    Graph c5b = from_edge_list(5, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 0}});
    CHECK(canonical_form(c5a).canon == canonical_form(c5b).canon);

    Graph p3 = from_edge_list(3, {{0, 1}, {1, 2}});
    Graph k3 = from_edge_list(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(canonical_form(p3).canon != canonical_form(k3).canon);
}

TEST_CASE("relabeling reproduces the canonical adjacency") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g(2 + trial % 9);
        std::bernoulli_distribution coin(0.4);
        for (int u = 0; u < g.n; ++u)
            for (int v = u + 1; v < g.n; ++v)
                if (coin(rng)) g.add_edge(u, v);
        auto cf = canonical_form(g);
        std::vector<int> perm(g.n);
        for (int v = 0; v < g.n; ++v) perm[v] = cf.relabeling[v];
        CHECK(emit_graph6(permuted(g, perm)) == cf.canon);
    }
}

TEST_CASE("canonical form of F9 is invariant under 100 random permutations") {
    const auto entries = catalog();
    const Graph& f9 = *catalog_find(entries, "f9");
    const auto reference = canonical_form(f9).canon;
    std::mt19937 rng(42);
    for (int trial = 0; trial < 100; ++trial)
        CHECK(canonical_form(random_permutation_of(rng, f9)).canon == reference);
}

TEST_CASE("canonical form separates all isomorphism classes up to n = 6") {
    // known counts of graphs on n nodes
    const std::map<int, long long> expected{{1, 1}, {2, 2}, {3, 4}, {4, 11}, {5, 34}, {6, 156}};
    for (auto [n, classes] : expected) {
        std::map<std::string, Graph> reps;
        const int bits = n * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
            Graph g = graph_from_mask(n, mask);
            reps.try_emplace(canonical_form(g).canon, g);
        }
        CHECK(static_cast<long long>(reps.size()) == classes);

        // distinct canonical forms must really be non-isomorphic
        if (n <= 5) {
            std::vector<Graph> list;
            for (auto& [canon, g] : reps) list.push_back(g);
            for (std::size_t i = 0; i < list.size(); ++i)
                for (std::size_t j = i + 1; j < list.size(); ++j)
                    CHECK_FALSE(brute_isomorphic(list[i], list[j]));
        }
    }
}

TEST_CASE("same_orbit matches brute-force vertex equivalence") {
    // path 0-1-2: endpoints are equivalent, the middle vertex is not
    Graph p3 = from_edge_list(3, {{0, 1}, {1, 2}});
    CHECK(same_orbit(p3, 0, 2));
    CHECK_FALSE(same_orbit(p3, 0, 1));

    const auto entries = catalog();
    const Graph& f9 = *catalog_find(entries, "f9");
    CHECK(same_orbit(f9, 0, 2));        // hexagon vertices
    CHECK(same_orbit(f9, 6, 7));        // triangle vertices
    CHECK_FALSE(same_orbit(f9, 0, 6));  // degree 3 vs 4
}
