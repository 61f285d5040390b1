#pragma once

#include <string>
#include <vector>

#include "qcg/graph.hpp"
#include "qcg/scenario.hpp"

namespace qcg {

struct GraphCatalogEntry {
    std::string name;
    Graph graph;
    std::string notes;
};

// Built-in graphs. F9 and X16 are defined as the orthogonality graphs of the
// catalog vectors, which makes their edge sets machine-checkable rather than
// transcribed from a drawing.
inline std::vector<GraphCatalogEntry> catalog() {
    std::vector<GraphCatalogEntry> entries;
    entries.push_back({"c5",
                       from_edge_list(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}),
                       "KCBS pentagon; alpha = 2, theta = sqrt(5)"});
    entries.push_back({"f9", f9_scenario().representation.graph,
                       "Fisher 9, orthogonality graph of the nine measurement vectors; "
                       "hexagon 1-6, triangle 7-9, six spokes; alpha = 3, theta = 11/3"});
    entries.push_back({"x16", orthogonality_graph(extended_vectors()),
                       "extension of f9 by seven basis-completion vectors; every vertex "
                       "lies in exactly one orthonormal-basis 4-clique"});
    return entries;
}

inline const Graph* catalog_find(const std::vector<GraphCatalogEntry>& entries,
                                 const std::string& name) {
    for (const auto& e : entries)
        if (e.name == name) return &e.graph;
    return nullptr;
}

}  // namespace qcg
