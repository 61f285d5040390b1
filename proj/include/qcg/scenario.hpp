#pragma once

#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcg/graph.hpp"
#include "qcg/rational.hpp"
#include "qcg/theta.hpp"

namespace qcg {

// Unit vector in R^4. Catalog vectors also carry an exact form
// num / sqrt(den) with integer entries, so orthogonality and overlaps can be
// decided in integer arithmetic. Vectors without an exact form (e.g. the
// KCBS umbrella) have den == 0.
struct RealVector4 {
    std::array<double, 4> v{};
    std::array<long long, 4> num{};
    long long den = 0;

    bool exact() const { return den != 0; }

    static RealVector4 from_ints(long long a, long long b, long long c, long long d) {
        RealVector4 r;
        r.num = {a, b, c, d};
        r.den = a * a + b * b + c * c + d * d;
        if (r.den == 0) throw std::invalid_argument("RealVector4: zero vector");
        const double scale = 1.0 / std::sqrt(static_cast<double>(r.den));
        for (int i = 0; i < 4; ++i) r.v[i] = static_cast<double>(r.num[i]) * scale;
        return r;
    }

    static RealVector4 from_doubles(const std::array<double, 4>& comps) {
        RealVector4 r;
        double norm2 = 0.0;
        for (double c : comps) norm2 += c * c;
        if (norm2 <= 0) throw std::invalid_argument("RealVector4: zero vector");
        const double scale = 1.0 / std::sqrt(norm2);
        for (int i = 0; i < 4; ++i) r.v[i] = comps[i] * scale;
        return r;
    }
};

inline double dot(const RealVector4& a, const RealVector4& b) {
    return a.v[0] * b.v[0] + a.v[1] * b.v[1] + a.v[2] * b.v[2] + a.v[3] * b.v[3];
}

inline long long dot_int(const RealVector4& a, const RealVector4& b) {
    if (!a.exact() || !b.exact())
        throw std::logic_error("dot_int: vector has no exact form");
    return a.num[0] * b.num[0] + a.num[1] * b.num[1] + a.num[2] * b.num[2] + a.num[3] * b.num[3];
}

// <a|b>^2 as an exact rational.
inline Rational overlap_sq(const RealVector4& a, const RealVector4& b) {
    long long d = dot_int(a, b);
    return Rational(d * d, a.den * b.den);
}

struct OrthonormalRepresentation {
    Graph graph;
    std::vector<RealVector4> vectors;  // one per vertex
    RealVector4 handle;
};

struct Scenario {
    OrthonormalRepresentation representation;
    std::vector<RealVector4> perp_states;  // post-outcome-0 states, one per vertex
};

// Normalized projection of psi onto the orthogonal complement of u, signed so
// the overlap with psi is positive. Exact when both inputs are exact.
inline RealVector4 compute_perp(const RealVector4& psi, const RealVector4& u) {
    if (psi.exact() && u.exact()) {
        const long long a_dot_p = dot_int(u, psi);
        std::array<long long, 4> w{};
        long long norm2 = 0;
        for (int i = 0; i < 4; ++i) {
            w[i] = u.den * psi.num[i] - a_dot_p * u.num[i];
            norm2 += w[i] * w[i];
        }
        if (norm2 == 0) throw std::domain_error("compute_perp: psi is parallel to u");
        long long sign_dot = w[0] * psi.num[0] + w[1] * psi.num[1] + w[2] * psi.num[2] + w[3] * psi.num[3];
        long long g = 0;
        for (long long c : w) g = std::gcd(g, c < 0 ? -c : c);
        long long s = sign_dot < 0 ? -1 : 1;
        return RealVector4::from_ints(s * w[0] / g, s * w[1] / g, s * w[2] / g, s * w[3] / g);
    }
    const double proj = dot(u, psi);
    std::array<double, 4> w{};
    double norm2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        w[i] = psi.v[i] - proj * u.v[i];
        norm2 += w[i] * w[i];
    }
    if (norm2 < 1e-24) throw std::domain_error("compute_perp: psi is parallel to u");
    RealVector4 r = RealVector4::from_doubles(w);
    if (dot(r, psi) < 0)
        for (double& c : r.v) c = -c;
    return r;
}

// The nine measurement vectors of the Fisher 9 scenario plus the seven
// basis-completion vectors, all exact.
inline std::vector<RealVector4> extended_vectors() {
    return {
        RealVector4::from_ints(1, 1, 0, 1),    // u1
        RealVector4::from_ints(1, 0, 1, -1),   // u2
        RealVector4::from_ints(0, 1, 1, 1),    // u3
        RealVector4::from_ints(1, 1, 0, -1),   // u4
        RealVector4::from_ints(1, 0, 1, 1),    // u5
        RealVector4::from_ints(0, 1, 1, -1),   // u6
        RealVector4::from_ints(1, 0, 0, 0),    // u7
        RealVector4::from_ints(0, 1, 0, 0),    // u8
        RealVector4::from_ints(0, 0, 1, 0),    // u9
        RealVector4::from_ints(0, 0, 0, 1),    // u10
        RealVector4::from_ints(0, -1, 1, 1),   // u11
        RealVector4::from_ints(-1, 1, 1, 0),   // u12
        RealVector4::from_ints(1, 0, -1, 1),   // u13
        RealVector4::from_ints(1, -1, 1, 0),   // u14
        RealVector4::from_ints(1, 1, -1, 0),   // u15
        RealVector4::from_ints(-1, 1, 0, 1),   // u16
    };
}

inline RealVector4 f9_handle() { return RealVector4::from_ints(1, 1, 1, 0); }

// Orthogonality graph of exact vectors: edge iff integer dot product is zero.
inline Graph orthogonality_graph(const std::vector<RealVector4>& vectors) {
    Graph g(static_cast<int>(vectors.size()));
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (dot_int(vectors[i], vectors[j]) == 0) g.add_edge(i, j);
    return g;
}

inline Scenario f9_scenario() {
    auto all = extended_vectors();
    OrthonormalRepresentation rep;
    rep.vectors.assign(all.begin(), all.begin() + 9);
    rep.handle = f9_handle();
    rep.graph = orthogonality_graph(rep.vectors);
    Scenario sc;
    sc.representation = rep;
    sc.perp_states.reserve(9);
    for (const auto& u : rep.vectors) sc.perp_states.push_back(compute_perp(rep.handle, u));
    return sc;
}

// KCBS pentagon in an umbrella configuration (embedded in R^4, fourth
// component zero); consecutive vectors are orthogonal and the handle sum of
// squared overlaps equals sqrt(5). These vectors have no exact integer form.
inline Scenario kcbs_scenario() {
    const double pi = std::acos(-1.0);
    const double c36 = std::cos(pi / 5.0);
    const double cos2t = c36 / (1.0 + c36);
    const double ct = std::sqrt(cos2t);
    const double st = std::sqrt(1.0 - cos2t);
    OrthonormalRepresentation rep;
    rep.handle = RealVector4::from_doubles({1.0, 0.0, 0.0, 0.0});
    for (int k = 0; k < 5; ++k) {
        double phase = 4.0 * pi * k / 5.0;
        rep.vectors.push_back(RealVector4::from_doubles(
            {ct, st * std::cos(phase), st * std::sin(phase), 0.0}));
    }
    rep.graph = from_edge_list(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    Scenario sc;
    sc.representation = rep;
    for (const auto& u : rep.vectors) sc.perp_states.push_back(compute_perp(rep.handle, u));
    return sc;
}

struct EdgeCheck {
    int u = 0, v = 0;  // 0-based
    bool orthogonal = false;
};

struct RepresentationReport {
    std::vector<EdgeCheck> edge_checks;
    bool all_edges_orthogonal = false;
    bool exact = false;                 // handle sum available as an exact rational
    Rational handle_sum_exact;
    double handle_sum = 0.0;            // sum_i <u_i|psi>^2
    ThetaResult theta;
    bool handle_sum_in_theta_interval = false;
};

inline RepresentationReport verify_representation(const OrthonormalRepresentation& rep,
                                                  double gap_tol = 1e-8) {
    RepresentationReport rpt;
    bool exact = rep.handle.exact();
    for (const auto& u : rep.vectors) exact = exact && u.exact();
    rpt.exact = exact;

    rpt.all_edges_orthogonal = true;
    for (auto [u, v] : edge_list(rep.graph)) {
        EdgeCheck chk{u, v, false};
        if (exact)
            chk.orthogonal = dot_int(rep.vectors[u], rep.vectors[v]) == 0;
        else
            chk.orthogonal = std::abs(dot(rep.vectors[u], rep.vectors[v])) <= 1e-10;
        rpt.all_edges_orthogonal = rpt.all_edges_orthogonal && chk.orthogonal;
        rpt.edge_checks.push_back(chk);
    }

    if (exact) {
        Rational sum;
        for (const auto& u : rep.vectors) sum = sum + overlap_sq(u, rep.handle);
        rpt.handle_sum_exact = sum;
        rpt.handle_sum = sum.value();
    } else {
        double sum = 0.0;
        for (const auto& u : rep.vectors) {
            double d = dot(u, rep.handle);
            sum += d * d;
        }
        rpt.handle_sum = sum;
    }

    rpt.theta = lovasz_theta(rep.graph, gap_tol);
    rpt.handle_sum_in_theta_interval =
        rpt.handle_sum >= rpt.theta.lower - gap_tol && rpt.handle_sum <= rpt.theta.upper + gap_tol;
    return rpt;
}

struct BasisCoverReport {
    std::vector<std::vector<int>> basis_cliques;   // 4-cliques whose vectors are pairwise orthogonal
    std::vector<int> cliques_per_vertex;           // membership count, one entry per vertex
    bool all_first_nine_covered = false;
    bool restriction_is_f9 = false;
};

inline BasisCoverReport verify_basis_cover(const std::vector<RealVector4>& vectors, const Graph& g) {
    if (static_cast<int>(vectors.size()) != g.n)
        throw std::invalid_argument("verify_basis_cover: vector/vertex count mismatch");
    BasisCoverReport rpt;
    rpt.cliques_per_vertex.assign(g.n, 0);
    for (const auto& clique : cliques_of_size(g, 4)) {
        bool ortho = true;
        for (int i = 0; i < 4 && ortho; ++i)
            for (int j = i + 1; j < 4 && ortho; ++j)
                ortho = dot_int(vectors[clique[i]], vectors[clique[j]]) == 0;
        if (!ortho) continue;
        rpt.basis_cliques.push_back(clique);
        for (int v : clique) ++rpt.cliques_per_vertex[v];
    }
    rpt.all_first_nine_covered = g.n >= 9;
    for (int v = 0; v < std::min(9, g.n); ++v)
        rpt.all_first_nine_covered = rpt.all_first_nine_covered && rpt.cliques_per_vertex[v] > 0;

    if (g.n >= 9) {
        Graph restriction(9);
        for (int u = 0; u < 9; ++u)
            for (int v = u + 1; v < 9; ++v)
                if (g.has_edge(u, v)) restriction.add_edge(u, v);
        rpt.restriction_is_f9 = restriction == f9_scenario().representation.graph;
    }
    return rpt;
}

}  // namespace qcg
