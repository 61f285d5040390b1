#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qcg/experiment.hpp"

using namespace qcg;
using Catch::Matchers::WithinAbs;

TEST_CASE("source statistics of an attenuated pulse") {
    auto s = source_stats(0.16);
    CHECK_THAT(s.p_nonnull, WithinAbs(0.147856, 1e-6));
    CHECK_THAT(s.p_single_given_nonnull, WithinAbs(0.922132, 1e-6));
    CHECK_THAT(s.p_multi, WithinAbs(0.011513, 1e-6));

    for (double mu : {0.0, 0.01, 0.16, 0.5, 1.0, 4.0}) {
        auto t = source_stats(mu);
        CHECK_THAT(t.p_nonnull, WithinAbs(1.0 - std::exp(-mu), 1e-15));
        // single + multi exhaust the nonnull events
        CHECK_THAT(t.p_single_given_nonnull * t.p_nonnull + t.p_multi,
                   WithinAbs(t.p_nonnull, 1e-15));
        CHECK(t.p_multi >= 0.0);
    }
    auto zero = source_stats(0.0);
    CHECK(zero.p_nonnull == 0.0);
    CHECK(zero.p_single_given_nonnull == 1.0);
    CHECK(zero.p_multi == 0.0);
    CHECK_THROWS_AS(source_stats(-0.1), std::invalid_argument);
}

TEST_CASE("slit encoding of fixed states") {
    auto sc = f9_scenario();
    const double pi = std::acos(-1.0);

    auto psi = slit_encode(sc.representation.handle);
    CHECK_THAT(psi.t[0], WithinAbs(1.0, 1e-15));
    CHECK_THAT(psi.t[1], WithinAbs(1.0, 1e-15));
    CHECK_THAT(psi.t[2], WithinAbs(1.0, 1e-15));
    CHECK_THAT(psi.t[3], WithinAbs(0.0, 1e-15));
    CHECK_THAT(psi.c, WithinAbs(3.0, 1e-15));
    for (double phase : psi.phi) CHECK(phase == 0.0);

    auto u2 = slit_encode(sc.representation.vectors[1]);  // (1, 0, 1, -1)/sqrt(3)
    CHECK(u2.phi[0] == 0.0);
    CHECK(u2.phi[3] == pi);

    auto perp1 = slit_encode(sc.perp_states[0]);  // (1, 1, 3, -2)/sqrt(15)
    CHECK_THAT(perp1.t[0], WithinAbs(1.0 / 9.0, 1e-14));
    CHECK_THAT(perp1.t[1], WithinAbs(1.0 / 9.0, 1e-14));
    CHECK_THAT(perp1.t[2], WithinAbs(1.0, 1e-14));
    CHECK_THAT(perp1.t[3], WithinAbs(4.0 / 9.0, 1e-14));
    CHECK(perp1.phi[3] == pi);
}

TEST_CASE("slit encoding round-trips every catalog state") {
    auto sc = f9_scenario();
    std::vector<RealVector4> states = extended_vectors();
    states.insert(states.end(), sc.perp_states.begin(), sc.perp_states.end());
    for (const auto& v : states) {
        auto back = slit_decode(slit_encode(v));
        for (int i = 0; i < 4; ++i) CHECK_THAT(back.v[i], WithinAbs(v.v[i], 1e-12));
    }
}

TEST_CASE("ideal probabilities of the nine-vector scenario") {
    auto sc = f9_scenario();
    auto tbl = ideal_probabilities(sc);

    REQUIRE(tbl.p1.size() == 9);
    CHECK(tbl.p1[0] == Rational(4, 9));
    CHECK(tbl.p1[6] == Rational(1, 3));

    // 15 edges, both directions each
    CHECK(tbl.p1j_given_ui.size() == 30);
    CHECK(tbl.p1j_given_perp.size() == 30);

    // adjacent measurements are exclusive after re-preparing u_i
    for (const auto& [e, p] : tbl.p1j_given_ui) CHECK(p == Rational(0));
    CHECK(tbl.p1j_given_perp.at({0, 1}) == Rational(4, 5));

    // conditional decomposition reproduces the unconditional marginal
    for (const auto& [e, q_perp] : tbl.p1j_given_perp) {
        Rational lhs = tbl.p1[e.i] * tbl.p1j_given_ui.at(e) +
                       (Rational(1) - tbl.p1[e.i]) * q_perp;
        CHECK(lhs == tbl.p1[e.j]);
    }
}

TEST_CASE("joint probabilities") {
    auto j = joint_probabilities(Rational(4, 9), Rational(5, 9), Rational(0), Rational(4, 5));
    CHECK(j.p11 == Rational(0));
    CHECK(j.p01 == Rational(4, 9));
    CHECK(j.p10 == Rational(4, 9));
    CHECK(j.p00 == Rational(1, 9));

    auto d = joint_probabilities(0.5, 0.5, 0.2, 0.4);
    CHECK_THAT(d.p11 + d.p01 + d.p10 + d.p00, WithinAbs(1.0, 1e-15));
    CHECK_THROWS_AS(joint_probabilities(1.5, -0.5, 0.2, 0.4), std::invalid_argument);
}

TEST_CASE("exact S statistic") {
    auto sc = f9_scenario();
    auto tbl = ideal_probabilities(sc);
    CHECK(s_statistic_exact(sc, tbl) == Rational(11, 3));

    // deterministic assignment on an independent set reaches exactly alpha
    IdealProbabilities det;
    det.p1.assign(9, Rational(0));
    for (int v : {0, 2, 4}) det.p1[v] = Rational(1);
    for (const auto& e : ordered_edges(sc.representation.graph)) {
        det.p1j_given_ui[e] = det.p1[e.j];
        det.p1j_given_perp[e] = det.p1[e.j];
    }
    // {0, 2, 4} is independent, so no edge has both marginals set
    CHECK(s_statistic_exact(sc, det) == Rational(3));

    IdealProbabilities zero = det;
    zero.p1.assign(9, Rational(0));
    CHECK(s_statistic_exact(sc, zero) == Rational(0));
}

TEST_CASE("epsilon table of the ideal prediction vanishes") {
    auto sc = f9_scenario();
    auto eps = epsilon_table_ideal(sc);
    REQUIRE(eps.size() == 30);
    for (const auto& e : eps) {
        CHECK(e.eps_first_0.p == 0.0);
        CHECK(e.eps_first_0.var == 0.0);
        CHECK(e.eps_first_1.p == 0.0);
        CHECK(e.eps_second_1.p <= 1e-15);
        CHECK(e.eps_second_0.p == e.eps_second_1.p);
        CHECK(e.eps_second_0.var == e.eps_second_1.var);
    }
}

TEST_CASE("protocol runs are reproducible and self-consistent") {
    auto sc = f9_scenario();
    auto a = run_protocol(sc, 2000, {}, 42);
    auto b = run_protocol(sc, 2000, {}, 42);
    CHECK(a.vertex_counts == b.vertex_counts);
    CHECK(a.counts_given_ui == b.counts_given_ui);
    CHECK(a.counts_given_perp == b.counts_given_perp);
    CHECK(a.s.p == b.s.p);

    auto c = run_protocol(sc, 2000, {}, 43);
    CHECK(a.vertex_counts != c.vertex_counts);

    REQUIRE(a.vertex_counts.size() == 9);
    for (const auto& counts : a.vertex_counts) {
        long long total = counts[0] + counts[1] + counts[2] + counts[3];
        CHECK(total == 2000);
    }
    CHECK(a.counts_given_ui.size() == 30);
    CHECK(a.counts_given_perp.size() == 30);
    CHECK(a.epsilons.size() == 30);
    CHECK(a.noncontextual_bound == 3);
    CHECK(a.s.var > 0.0);
    CHECK_THAT(a.violation_sigmas, WithinAbs((a.s.p - 3.0) / a.s.sigma(), 1e-12));

    CHECK_THROWS_AS(run_protocol(sc, 0, {}, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_protocol(kcbs_scenario(), 100, {}, 1), std::invalid_argument);
}

TEST_CASE("noise-free estimate is consistent with the exact value") {
    auto sc = f9_scenario();
    auto rec = run_protocol(sc, 100000, {}, 7);
    CHECK(std::abs(rec.s.p - 11.0 / 3.0) <= 5.0 * rec.s.sigma());
    CHECK(rec.violation_sigmas > 30.0);

    // estimated marginals track the exact ones
    auto tbl = ideal_probabilities(sc);
    for (int i = 0; i < 9; ++i)
        CHECK(std::abs(rec.p1[i].p - tbl.p1[i].value()) <= 5.0 * rec.p1[i].sigma() + 1e-9);

    // no-signaling estimators stay within statistics
    for (const auto& e : rec.epsilons) {
        CHECK(e.eps_first_0.p == 0.0);
        CHECK(e.eps_second_1.p <= 5.0 * std::sqrt(e.eps_second_1.var) + 1e-9);
    }
}

TEST_CASE("estimator is unbiased across seeds") {
    auto sc = f9_scenario();
    double mean = 0.0;
    const int reps = 12;
    double sigma = 0.0;
    for (int r = 0; r < reps; ++r) {
        auto rec = run_protocol(sc, 20000, {}, 1000 + r);
        mean += rec.s.p;
        sigma = rec.s.sigma();
    }
    mean /= reps;
    CHECK(std::abs(mean - 11.0 / 3.0) <= 5.0 * sigma / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("noise lowers S but a realistic level still violates the bound") {
    auto sc = f9_scenario();
    NoiseModel noise{1e-4, 0.02};
    auto rec = run_protocol(sc, 100000, noise, 5);
    CHECK(rec.s.p < 11.0 / 3.0);
    CHECK(rec.s.p > 3.0);
    CHECK(rec.violation_sigmas > 30.0);

    NoiseModel heavy{0.0, 0.5};
    auto flat = run_protocol(sc, 100000, heavy, 5);
    CHECK(flat.s.p < rec.s.p);
}

TEST_CASE("measurement bases partition outcomes around each vertex") {
    auto bases = f9_measurement_bases();
    auto all = extended_vectors();
    REQUIRE(bases.size() == 9);
    for (int v = 0; v < 9; ++v) {
        CHECK(bases[v][0] == v);
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                CHECK(dot_int(all[bases[v][a]], all[bases[v][b]]) == 0);
    }
}
