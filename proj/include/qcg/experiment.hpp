#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "qcg/alpha.hpp"
#include "qcg/rational.hpp"
#include "qcg/scenario.hpp"

namespace qcg {

// Poisson pulse statistics of the attenuated-laser source.
struct SourceStats {
    double mu = 0.0;
    double p_nonnull = 0.0;
    double p_single_given_nonnull = 0.0;
    double p_multi = 0.0;
};

inline SourceStats source_stats(double mu) {
    if (mu < 0) throw std::invalid_argument("source_stats: mu must be >= 0");
    SourceStats s;
    s.mu = mu;
    s.p_nonnull = -std::expm1(-mu);
    s.p_single_given_nonnull = mu == 0.0 ? 1.0 : mu * std::exp(-mu) / s.p_nonnull;
    s.p_multi = s.p_nonnull - mu * std::exp(-mu);
    return s;
}

// Slit transmissivities/phases realizing a real 4-component state, Eq.-(3)
// style: amplitudes come from sqrt(t), signs from a 0-or-pi phase.
struct SlitEncoding {
    std::array<double, 4> t{};
    std::array<double, 4> phi{};
    double c = 0.0;  // normalization: state = sum sqrt(t_l) e^{i phi_l} |l> / sqrt(C)
};

inline SlitEncoding slit_encode(const RealVector4& state) {
    SlitEncoding enc;
    double max_sq = 0.0;
    for (double c : state.v) max_sq = std::max(max_sq, c * c);
    if (max_sq <= 0) throw std::invalid_argument("slit_encode: zero state");
    const double pi = std::acos(-1.0);
    for (int l = 0; l < 4; ++l) {
        enc.t[l] = state.v[l] * state.v[l] / max_sq;
        enc.phi[l] = state.v[l] < 0 ? pi : 0.0;
    }
    enc.c = enc.t[0] + enc.t[1] + enc.t[2] + enc.t[3];
    return enc;
}

inline RealVector4 slit_decode(const SlitEncoding& enc) {
    std::array<double, 4> comps{};
    for (int l = 0; l < 4; ++l)
        comps[l] = std::sqrt(enc.t[l] / enc.c) * std::cos(enc.phi[l]);
    return RealVector4::from_doubles(comps);
}

struct NoiseModel {
    double dark_rate = 0.0;  // fraction of clicks assigned uniformly over the basis
    double mix = 0.0;        // white-noise mixing of the ideal 4-outcome distribution
};

// One estimated probability with its multinomial standard error.
struct Estimate {
    double p = 0.0;
    double var = 0.0;
    double sigma() const { return std::sqrt(var); }
};

struct OrderedEdge {
    int i = 0, j = 0;  // 0-based vertices, first and second measurement
    friend bool operator<(const OrderedEdge& a, const OrderedEdge& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    }
    friend bool operator==(const OrderedEdge&, const OrderedEdge&) = default;
};

// Ideal (exact rational) single-measurement probabilities of the scenario:
// vertex marginals on psi, and second-measurement marginals after
// re-preparing u_i or u_i_perp.
struct IdealProbabilities {
    std::vector<Rational> p1;                       // P(1|i) on psi, per vertex
    std::map<OrderedEdge, Rational> p1j_given_ui;   // P(1|j ; prep u_i)
    std::map<OrderedEdge, Rational> p1j_given_perp; // P(1|j ; prep u_i_perp)
};

inline std::vector<OrderedEdge> ordered_edges(const Graph& g) {
    std::vector<OrderedEdge> out;
    for (auto [u, v] : edge_list(g)) {
        out.push_back({u, v});
        out.push_back({v, u});
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline IdealProbabilities ideal_probabilities(const Scenario& sc) {
    const auto& rep = sc.representation;
    IdealProbabilities tbl;
    tbl.p1.reserve(rep.vectors.size());
    for (const auto& u : rep.vectors) tbl.p1.push_back(overlap_sq(u, rep.handle));
    for (const auto& e : ordered_edges(rep.graph)) {
        tbl.p1j_given_ui[e] = overlap_sq(rep.vectors[e.j], rep.vectors[e.i]);
        tbl.p1j_given_perp[e] = overlap_sq(rep.vectors[e.j], sc.perp_states[e.i]);
    }
    return tbl;
}

// Joint probabilities from the factorization P(1,1|i,j) = P(1|i) P(1|j; u_i),
// P(0,1|i,j) = P(0|i) P(1|j; u_i_perp), with the remaining two fixed by the
// marginals of the first measurement.
template <typename T>
struct Joints {
    T p11, p01, p10, p00;
};

inline Joints<Rational> joint_probabilities(Rational p1_i, Rational p0_i,
                                            Rational p1j_given_ui, Rational p1j_given_perp) {
    Joints<Rational> j;
    j.p11 = p1_i * p1j_given_ui;
    j.p01 = p0_i * p1j_given_perp;
    j.p10 = p1_i - j.p11;
    j.p00 = p0_i - j.p01;
    return j;
}

inline Joints<double> joint_probabilities(double p1_i, double p0_i,
                                          double p1j_given_ui, double p1j_given_perp) {
    for (double v : {p1_i, p0_i, p1j_given_ui, p1j_given_perp})
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("joint_probabilities: input outside [0, 1]");
    Joints<double> j;
    j.p11 = p1_i * p1j_given_ui;
    j.p01 = p0_i * p1j_given_perp;
    j.p10 = p1_i - j.p11;
    j.p00 = p0_i - j.p01;
    return j;
}

// S = sum_i P(1|i) - sum_edges P(1,1|i,j); each undirected edge contributes
// the average of its two ordered directions.
inline Rational s_statistic_exact(const Scenario& sc, const IdealProbabilities& tbl) {
    const Graph& g = sc.representation.graph;
    Rational s;
    for (const auto& p : tbl.p1) s = s + p;
    for (auto [u, v] : edge_list(g)) {
        Rational p11_uv = tbl.p1[u] * tbl.p1j_given_ui.at({u, v});
        Rational p11_vu = tbl.p1[v] * tbl.p1j_given_ui.at({v, u});
        s = s - (p11_uv + p11_vu) / Rational(2);
    }
    return s;
}

struct EpsilonEntry {
    OrderedEdge edge;
    Estimate eps_second_0;  // eps_{_,0|i,j}
    Estimate eps_second_1;  // eps_{_,1|i,j}
    Estimate eps_first_0;   // eps_{0,_|i,j}, identically zero by construction
    Estimate eps_first_1;   // eps_{1,_|i,j}, identically zero by construction
};

// Counts and estimates of one simulated run. Vertex settings measure psi in
// the vertex's fixed 4-outcome basis; each ordered edge (i,j) adds two
// settings measuring j's basis after re-preparing u_i resp. u_i_perp.
struct ExperimentRecord {
    long long shots = 0;
    std::uint64_t seed = 0;
    NoiseModel noise;

    std::vector<std::array<long long, 4>> vertex_counts;  // outcome i first, then its basis partners
    std::map<OrderedEdge, std::array<long long, 4>> counts_given_ui;
    std::map<OrderedEdge, std::array<long long, 4>> counts_given_perp;

    std::vector<Estimate> p1;                        // P(1|i)
    std::map<OrderedEdge, Estimate> p1j_given_ui;    // P(1|j ; prep u_i)
    std::map<OrderedEdge, Estimate> p1j_given_perp;  // P(1|j ; prep u_i_perp)
    std::map<OrderedEdge, Joints<double>> joints;

    Estimate s;                 // S statistic with propagated standard error
    double violation_sigmas = 0.0;  // (S - alpha) in units of sigma(S)
    int noncontextual_bound = 0;
    std::vector<EpsilonEntry> epsilons;
};

namespace detail {

// splitmix64: seedable counter-based stream, one independent stream per
// measurement setting so results do not depend on execution order.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t setting) {
    SplitMix64 mix(seed ^ (0xd1b54a32d192ed03ull * (setting + 1)));
    return mix.next();
}

inline std::array<long long, 4> sample_multinomial(const std::array<double, 4>& p,
                                                   long long shots, std::uint64_t seed) {
    std::array<long long, 4> counts{};
    SplitMix64 rng(seed);
    for (long long s = 0; s < shots; ++s) {
        double u = rng.uniform();
        int k = 0;
        double acc = p[0];
        while (k < 3 && u >= acc) acc += p[++k];
        ++counts[k];
    }
    return counts;
}

inline std::array<double, 4> apply_noise(std::array<double, 4> p, const NoiseModel& noise) {
    for (double& v : p) v = (1.0 - noise.mix) * v + noise.mix * 0.25;
    for (double& v : p) v = (1.0 - noise.dark_rate) * v + noise.dark_rate * 0.25;
    return p;
}

}  // namespace detail

// Measurement bases: the lowest-index orthonormal 4-clique of the extended
// graph containing each vertex, ordered so the vertex itself is outcome 0.
inline std::vector<std::array<int, 4>> f9_measurement_bases() {
    auto vectors = extended_vectors();
    Graph x16 = orthogonality_graph(vectors);
    auto cover = verify_basis_cover(vectors, x16);
    std::vector<std::array<int, 4>> bases(9);
    for (int v = 0; v < 9; ++v) {
        const std::vector<int>* clique = nullptr;
        for (const auto& c : cover.basis_cliques) {
            if (std::find(c.begin(), c.end(), v) != c.end()) { clique = &c; break; }
        }
        if (!clique) throw std::logic_error("f9_measurement_bases: vertex not covered");
        bases[v][0] = v;
        int k = 1;
        for (int u : *clique)
            if (u != v) bases[v][k++] = u;
    }
    return bases;
}

// Epsilon no-signaling estimators for one ordered edge, from the standalone
// marginals of i and j and the two conditional second-measurement estimates.
// eps_{0,_} and eps_{1,_} vanish identically because the joints are built
// from the first measurement's own marginals; eps_{_,0} equals eps_{_,1}
// because the four joints and the two j-marginals each sum to one.
inline EpsilonEntry epsilon_entry(const OrderedEdge& e, const Estimate& p1_i,
                                  const Estimate& p1_j, const Estimate& q_ui,
                                  const Estimate& q_perp) {
    EpsilonEntry ent;
    ent.edge = e;
    const double diff = p1_j.p - (1.0 - p1_i.p) * q_perp.p - p1_i.p * q_ui.p;
    double var = p1_j.var;
    const double d_pi = q_perp.p - q_ui.p;
    var += d_pi * d_pi * p1_i.var;
    var += (1.0 - p1_i.p) * (1.0 - p1_i.p) * q_perp.var;
    var += p1_i.p * p1_i.p * q_ui.var;
    ent.eps_second_1 = {std::abs(diff), var};
    ent.eps_second_0 = ent.eps_second_1;
    ent.eps_first_0 = {0.0, 0.0};
    ent.eps_first_1 = {0.0, 0.0};
    return ent;
}

inline std::vector<EpsilonEntry> epsilon_table(const ExperimentRecord& rec) {
    std::vector<EpsilonEntry> out;
    for (const auto& [e, q_ui] : rec.p1j_given_ui)
        out.push_back(epsilon_entry(e, rec.p1[e.i], rec.p1[e.j], q_ui, rec.p1j_given_perp.at(e)));
    return out;
}

// Exact epsilon table of the ideal quantum prediction (all variances zero).
inline std::vector<EpsilonEntry> epsilon_table_ideal(const Scenario& sc) {
    auto tbl = ideal_probabilities(sc);
    std::vector<EpsilonEntry> out;
    for (const auto& [e, q_ui] : tbl.p1j_given_ui) {
        Estimate p1_i{tbl.p1[e.i].value(), 0.0};
        Estimate p1_j{tbl.p1[e.j].value(), 0.0};
        Estimate ui{q_ui.value(), 0.0};
        Estimate perp{tbl.p1j_given_perp.at(e).value(), 0.0};
        out.push_back(epsilon_entry(e, p1_i, p1_j, ui, perp));
    }
    return out;
}

inline ExperimentRecord run_protocol(const Scenario& sc, long long shots_per_setting,
                                     const NoiseModel& noise, std::uint64_t seed) {
    if (shots_per_setting < 1)
        throw std::invalid_argument("run_protocol: shots must be >= 1");
    const Graph& g = sc.representation.graph;
    if (g.n != 9)
        throw std::invalid_argument("run_protocol: only the F9 scenario has a full basis cover");

    const auto bases = f9_measurement_bases();
    const auto all_vectors = extended_vectors();
    const auto edges = ordered_edges(g);

    const auto outcome_distribution = [&](const RealVector4& prepared, int j) {
        std::array<double, 4> p{};
        for (int k = 0; k < 4; ++k) {
            double a = dot(all_vectors[bases[j][k]], prepared);
            p[k] = a * a;
        }
        return detail::apply_noise(p, noise);
    };

    ExperimentRecord rec;
    rec.shots = shots_per_setting;
    rec.seed = seed;
    rec.noise = noise;

    const auto estimate_first = [&](const std::array<long long, 4>& counts) {
        double p = static_cast<double>(counts[0]) / shots_per_setting;
        return Estimate{p, p * (1.0 - p) / shots_per_setting};
    };

    // settings 0..8: prepare psi, measure the vertex basis
    std::uint64_t setting = 0;
    rec.vertex_counts.resize(9);
    for (int i = 0; i < 9; ++i, ++setting) {
        auto p = outcome_distribution(sc.representation.handle, i);
        rec.vertex_counts[i] =
            detail::sample_multinomial(p, shots_per_setting, detail::stream_seed(seed, setting));
        rec.p1.push_back(estimate_first(rec.vertex_counts[i]));
    }

    // two settings per ordered edge: re-prepare u_i, then u_i_perp
    for (const auto& e : edges) {
        auto p_ui = outcome_distribution(sc.representation.vectors[e.i], e.j);
        rec.counts_given_ui[e] =
            detail::sample_multinomial(p_ui, shots_per_setting, detail::stream_seed(seed, setting++));
        rec.p1j_given_ui[e] = estimate_first(rec.counts_given_ui[e]);

        auto p_perp = outcome_distribution(sc.perp_states[e.i], e.j);
        rec.counts_given_perp[e] =
            detail::sample_multinomial(p_perp, shots_per_setting, detail::stream_seed(seed, setting++));
        rec.p1j_given_perp[e] = estimate_first(rec.counts_given_perp[e]);
    }

    for (const auto& e : edges)
        rec.joints[e] = joint_probabilities(rec.p1[e.i].p, 1.0 - rec.p1[e.i].p,
                                            rec.p1j_given_ui[e].p, rec.p1j_given_perp[e].p);

    // S and its delta-method error; P(1|i) enters both sums, so collect the
    // gradient per estimate before squaring
    double s_value = 0.0;
    std::vector<double> grad_p1(9, 1.0);
    double var = 0.0;
    for (int i = 0; i < 9; ++i) s_value += rec.p1[i].p;
    for (auto [u, v] : edge_list(g)) {
        const double quv = rec.p1j_given_ui[{u, v}].p;
        const double qvu = rec.p1j_given_ui[{v, u}].p;
        s_value -= 0.5 * (rec.p1[u].p * quv + rec.p1[v].p * qvu);
        grad_p1[u] -= 0.5 * quv;
        grad_p1[v] -= 0.5 * qvu;
        var += 0.25 * rec.p1[u].p * rec.p1[u].p * rec.p1j_given_ui[{u, v}].var;
        var += 0.25 * rec.p1[v].p * rec.p1[v].p * rec.p1j_given_ui[{v, u}].var;
    }
    for (int i = 0; i < 9; ++i) var += grad_p1[i] * grad_p1[i] * rec.p1[i].var;
    rec.s = {s_value, var};

    rec.noncontextual_bound = independence_number_value(g);
    rec.violation_sigmas = (s_value - rec.noncontextual_bound) / rec.s.sigma();
    rec.epsilons = epsilon_table(rec);
    return rec;
}

}  // namespace qcg
