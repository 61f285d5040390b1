#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qcg/experiment.hpp"
#include "qcg/graph.hpp"
#include "qcg/scenario.hpp"
#include "qcg/search.hpp"

namespace qcg {

using nlohmann::json;

// Edge-list JSON: {"n": ..., "edges": [[u, v], ...]} with 0-based vertices.
inline json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (auto [u, v] : edge_list(g)) edges.push_back({u, v});
    return json{{"n", g.n}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j) {
    Graph g(j.at("n").get<int>());
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("edge-list JSON: each edge must be a 2-element array");
        g.add_edge(e[0].get<int>(), e[1].get<int>());
    }
    return g;
}

inline Graph load_graph_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return graph_from_json(json::parse(in));
}

// Representation files: vectors are [[n0,n1,n2,n3], den] meaning the unit
// vector (n0,n1,n2,n3)/sqrt(den).
inline RealVector4 vector_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("representation JSON: vector must be [[ints], den]");
    const auto& nums = j[0];
    RealVector4 v = RealVector4::from_ints(nums.at(0).get<long long>(), nums.at(1).get<long long>(),
                                           nums.at(2).get<long long>(), nums.at(3).get<long long>());
    if (v.den != j[1].get<long long>())
        throw std::invalid_argument("representation JSON: denominator does not match the squared norm");
    return v;
}

inline json vector_to_json(const RealVector4& v) {
    return json::array({json::array({v.num[0], v.num[1], v.num[2], v.num[3]}), v.den});
}

inline OrthonormalRepresentation representation_from_json(const json& j) {
    OrthonormalRepresentation rep;
    rep.graph = graph_from_json(j);
    for (const auto& vj : j.at("vectors")) rep.vectors.push_back(vector_from_json(vj));
    if (static_cast<int>(rep.vectors.size()) != rep.graph.n)
        throw std::invalid_argument("representation JSON: one vector per vertex required");
    rep.handle = vector_from_json(j.at("handle"));
    return rep;
}

inline OrthonormalRepresentation load_representation_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return representation_from_json(json::parse(in));
}

// SearchResult JSON; timing lives in its own object so determinism checks can
// compare everything else byte for byte.
inline json search_result_to_json(const SearchResult& r) {
    json argmax = json::array();
    for (const auto& e : r.argmax_graphs) {
        argmax.push_back({{"graph6", emit_graph6(e.graph)},
                          {"canonical_graph6", e.canon.canon},
                          {"alpha", e.alpha},
                          {"theta_lower", e.theta.lower},
                          {"theta_upper", e.theta.upper}});
    }
    return json{{"n", r.n},
                {"best_ratio_lower", r.best_ratio_lower},
                {"best_ratio_upper", r.best_ratio_upper},
                {"argmax_graphs", argmax},
                {"graphs_scanned", r.graphs_scanned},
                {"sdp_solves", r.sdp_solves},
                {"all_converged", r.all_converged},
                {"timing", json{{"wall_seconds", r.wall_seconds}}}};
}

inline json estimate_to_json(const Estimate& e) {
    return json{{"value", e.p}, {"sigma", e.sigma()}};
}

inline std::string pair_label(const OrderedEdge& e) {
    return std::to_string(e.i + 1) + ":" + std::to_string(e.j + 1);  // 1-based, Fig.-4 style
}

inline json experiment_record_to_json(const ExperimentRecord& rec) {
    json vertex = json::array();
    for (int i = 0; i < static_cast<int>(rec.p1.size()); ++i) {
        vertex.push_back({{"vertex", i + 1},
                          {"counts", rec.vertex_counts[i]},
                          {"p1", estimate_to_json(rec.p1[i])}});
    }
    json pairs = json::array();
    for (const auto& [e, counts_ui] : rec.counts_given_ui) {
        const auto& jn = rec.joints.at(e);
        pairs.push_back({{"pair", pair_label(e)},
                         {"counts_given_ui", counts_ui},
                         {"counts_given_perp", rec.counts_given_perp.at(e)},
                         {"p1j_given_ui", estimate_to_json(rec.p1j_given_ui.at(e))},
                         {"p1j_given_perp", estimate_to_json(rec.p1j_given_perp.at(e))},
                         {"joints", {{"p11", jn.p11}, {"p01", jn.p01}, {"p10", jn.p10}, {"p00", jn.p00}}}});
    }
    json eps = json::array();
    for (const auto& ent : rec.epsilons) {
        eps.push_back({{"pair", pair_label(ent.edge)},
                       {"eps_second_0", estimate_to_json(ent.eps_second_0)},
                       {"eps_second_1", estimate_to_json(ent.eps_second_1)},
                       {"eps_first_0", estimate_to_json(ent.eps_first_0)},
                       {"eps_first_1", estimate_to_json(ent.eps_first_1)}});
    }
    return json{{"shots", rec.shots},
                {"seed", rec.seed},
                {"noise", {{"mix", rec.noise.mix}, {"dark_rate", rec.noise.dark_rate}}},
                {"vertices", vertex},
                {"pairs", pairs},
                {"s", estimate_to_json(rec.s)},
                {"noncontextual_bound", rec.noncontextual_bound},
                {"violation_sigmas", rec.violation_sigmas},
                {"epsilons", eps}};
}

// One row per ordered pair, Fig.-4 layout.
inline std::string epsilon_table_csv(const std::vector<EpsilonEntry>& eps) {
    std::ostringstream out;
    out << "pair,eps_second_0,err_second_0,eps_second_1,err_second_1,"
           "eps_first_0,err_first_0,eps_first_1,err_first_1\n";
    out.precision(12);
    for (const auto& e : eps) {
        out << pair_label(e.edge) << ','
            << e.eps_second_0.p << ',' << e.eps_second_0.sigma() << ','
            << e.eps_second_1.p << ',' << e.eps_second_1.sigma() << ','
            << e.eps_first_0.p << ',' << e.eps_first_0.sigma() << ','
            << e.eps_first_1.p << ',' << e.eps_first_1.sigma() << '\n';
    }
    return out.str();
}

}  // namespace qcg
