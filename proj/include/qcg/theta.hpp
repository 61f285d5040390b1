#pragma once

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qcg/alpha.hpp"
#include "qcg/graph.hpp"
#include "qcg/numerics.hpp"

namespace qcg {

struct ThetaResult {
    double lower = 0.0;   // value of a certified feasible primal point
    double upper = 0.0;   // value of a certified feasible dual point
    SymMatrix x_opt;      // the feasible primal point behind `lower`
    int iterations = 0;
    bool converged = false;
};

namespace detail {

// Project the interior-point iterate onto the exact feasible set: zero the
// edge entries, renormalize the trace, and blend toward I/n if rounding left
// a slightly negative eigenvalue. Any feasible X gives a valid lower bound.
inline double certify_primal(const Graph& g, SymMatrix x, SymMatrix& x_out) {
    const int n = g.n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (g.has_edge(i, j)) { x.set_sym(i, j, 0.0); }
            else x.set_sym(i, j, 0.5 * (x.at(i, j) + x.at(j, i)));
        }
    double tr = x.trace();
    if (tr <= 0) return 0.0;
    for (double& v : x.a) v /= tr;
    double lam = min_eigenvalue(x);
    if (lam < 0) {
        double t = (-lam * n) / (1.0 - lam * n) + 1e-15;
        if (t >= 1.0) return 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                x.at(i, j) = (1.0 - t) * x.at(i, j) + (i == j ? t / n : 0.0);
    }
    x_out = x;
    return x.sum();
}

inline SymMatrix dual_slack(const Graph& g, const std::vector<std::pair<int, int>>& edges,
                            const std::vector<double>& y) {
    const int n = g.n;
    SymMatrix z(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z.at(i, j) = -1.0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [i, j] = edges[e];
        z.at(i, j) += y[e];
        z.at(j, i) += y[e];
    }
    double ytr = y.back();
    for (int i = 0; i < n; ++i) z.at(i, i) += ytr;
    return z;
}

// Dual slack for multipliers y: Z = sum_e y_e (E_ij + E_ji) + y_tr I - J.
// Shifting y_tr by -lambda_min(Z) keeps Z PSD, so y_tr - lambda_min(Z) is
// always a true upper bound on theta.
inline double certify_dual(const Graph& g, const std::vector<std::pair<int, int>>& edges,
                           const std::vector<double>& y) {
    return y.back() - min_eigenvalue(dual_slack(g, edges, y));
}

// Optimal-face rounding. By complementary slackness the primal optimum lives
// on the near-nullspace of a good dual slack. Writing X = V W V^T with V the
// r smallest eigenvectors of Z turns the affine constraints (zero edges,
// unit trace) into a tiny well-conditioned least-squares problem for W; the
// result is then repaired into an exactly feasible point. This recovers
// instances where the interior-point iterate itself stalls short of the
// boundary optimum.
inline double face_round(const Graph& g, const std::vector<std::pair<int, int>>& edges,
                         const SymMatrix& z, int max_rank, SymMatrix& x_out) {
    const int n = g.n;
    const auto eig = eigen_sym(z);
    const auto pab = [&](int a, int b, int i, int j) {
        double va_i = eig.vectors.at(i, n - 1 - a), vb_j = eig.vectors.at(j, n - 1 - b);
        double vb_i = eig.vectors.at(i, n - 1 - b), va_j = eig.vectors.at(j, n - 1 - a);
        return a == b ? va_i * va_j : va_i * vb_j + vb_i * va_j;
    };

    double best = 0.0;
    for (int r = 1; r <= std::min(max_rank, n); ++r) {
        const int nw = r * (r + 1) / 2;
        SymMatrix ata(nw);
        std::vector<double> atb(nw, 0.0), row(nw);
        const auto accumulate = [&](double b) {
            for (int p = 0; p < nw; ++p) {
                atb[p] += row[p] * b;
                for (int q = p; q < nw; ++q) ata.at(p, q) += row[p] * row[q];
            }
        };
        for (auto [i, j] : edges) {
            int k = 0;
            for (int a = 0; a < r; ++a)
                for (int b = a; b < r; ++b, ++k) row[k] = pab(a, b, i, j);
            accumulate(0.0);
        }
        {
            int k = 0;
            for (int a = 0; a < r; ++a)
                for (int b = a; b < r; ++b, ++k) {
                    double t = 0.0;
                    for (int i = 0; i < n; ++i) t += pab(a, b, i, i);
                    row[k] = t;
                }
            accumulate(1.0);
        }
        for (int p = 0; p < nw; ++p)
            for (int q = p; q < nw; ++q) ata.set_sym(p, q, ata.at(p, q));
        const double ridge = 1e-12 * (1.0 + ata.max_abs());
        for (int p = 0; p < nw; ++p) ata.at(p, p) += ridge;

        std::vector<double> w;
        try {
            w = solve_spd(ata, atb);
        } catch (const std::runtime_error&) {
            continue;
        }

        SymMatrix x(n);
        int k = 0;
        for (int a = 0; a < r; ++a)
            for (int b = a; b < r; ++b, ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) x.at(i, j) += w[k] * pab(a, b, i, j);
        SymMatrix xf;
        double lo = certify_primal(g, x, xf);
        if (lo > best) {
            best = lo;
            x_out = xf;
        }
    }
    return best;
}

}  // namespace detail

// Lovasz number via the independence-relaxation SDP
//   max <J, X>  s.t.  tr(X) = 1, X_ij = 0 on edges, X >= 0,
// solved with the Helmberg-Rendl-Vanderbei-Wolkowicz primal-dual
// interior-point method. Both returned bounds are certified from exactly
// feasible primal/dual points, so [lower, upper] always contains theta.
inline ThetaResult lovasz_theta(const Graph& g, double gap_tol = 1e-8,
                                double max_step = 0.95, int max_iterations = 500) {
    if (!(gap_tol > 0.0 && gap_tol <= 1.0))
        throw std::invalid_argument("lovasz_theta: gap_tol must be in (0, 1]");
    const int n = g.n;

    ThetaResult res;
    if (n == 1) {
        res.lower = res.upper = 1.0;
        res.x_opt = SymMatrix::identity(1);
        res.converged = true;
        return res;
    }

    const auto edges = edge_list(g);
    const int m1 = static_cast<int>(edges.size());
    const int m = m1 + 1;  // edge constraints plus the trace constraint

    SymMatrix x(n);
    for (int i = 0; i < n; ++i) x.at(i, i) = 1.0 / n;
    std::vector<double> y(m, 0.0);
    y[m - 1] = n + 1;
    SymMatrix z(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z.at(i, j) = (i == j ? n : -1.0);

    double mu = frobenius_inner(z, x) / (2.0 * n);

    // seed the lower bound with theta >= alpha: the uniform matrix on a
    // maximum independent set is exactly feasible with objective alpha, which
    // rescues instances whose primal optimum sits on the cone boundary
    double best_lower = 0.0, best_upper = static_cast<double>(n);
    SymMatrix best_x = x;
    {
        const AlphaResult ar = independence_number(g);
        SymMatrix xa(n);
        const auto verts = set_to_vertices(ar.witness);
        for (int i : verts)
            for (int j : verts) xa.at(i, j) = 1.0 / ar.alpha;
        best_lower = static_cast<double>(ar.alpha);
        best_x = xa;
    }
    std::vector<double> best_y = y;
    const auto certify = [&]() {
        SymMatrix xf;
        double lo = detail::certify_primal(g, x, xf);
        if (lo > best_lower) { best_lower = lo; best_x = xf; }
        double up = detail::certify_dual(g, edges, y);
        if (up < best_upper) { best_upper = up; best_y = y; }
        return best_upper - best_lower <= gap_tol;
    };

    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        // certified bounds only improve, so checking every iteration costs two
        // small eigen-decompositions but never loses a solution
        if (certify()) break;
        if (mu < 1e-16) break;

        SymMatrix zi;
        try {
            zi = spd_inverse(z);
        } catch (const std::runtime_error&) {
            break;  // dual slack lost definiteness; fall back to best certified bounds
        }

        // Schur system M dy = mu*A(Zi) - b over the edge multipliers + trace
        SymMatrix msys(m);
        std::vector<double> rhs(m);
        for (int e = 0; e < m1; ++e) {
            auto [i, j] = edges[e];
            for (int f = e; f < m1; ++f) {
                auto [k, l] = edges[f];
                double v = zi.at(i, k) * x.at(l, j) + zi.at(i, l) * x.at(k, j) +
                           zi.at(j, k) * x.at(l, i) + zi.at(j, l) * x.at(k, i);
                msys.set_sym(e, f, v);
            }
            double v = 0.0;
            for (int k = 0; k < n; ++k) v += zi.at(i, k) * x.at(k, j) + zi.at(j, k) * x.at(k, i);
            msys.set_sym(e, m - 1, v);
            rhs[e] = mu * 2.0 * zi.at(i, j);
        }
        msys.at(m - 1, m - 1) = frobenius_inner(zi, x);
        rhs[m - 1] = mu * zi.trace() - 1.0;

        std::vector<double> dy;
        bool solved = false;
        double ridge = 0.0;
        for (int attempt = 0; attempt < 4 && !solved; ++attempt) {
            try {
                SymMatrix msys_r = msys;
                if (ridge > 0)
                    for (int d = 0; d < m; ++d) msys_r.at(d, d) += ridge;
                dy = solve_spd(msys_r, rhs);
                solved = true;
            } catch (const std::runtime_error&) {
                ridge = (ridge == 0.0 ? 1e-12 * (1.0 + msys.max_abs()) : ridge * 100.0);
            }
        }
        if (!solved) break;

        SymMatrix dz(n);
        for (int e = 0; e < m1; ++e) {
            auto [i, j] = edges[e];
            dz.at(i, j) += dy[e];
            dz.at(j, i) += dy[e];
        }
        for (int i = 0; i < n; ++i) dz.at(i, i) += dy[m - 1];

        // dX = mu*Zi - X - Zi*dZ*X, symmetrized
        SymMatrix dx(n);
        {
            SymMatrix t(n);  // Zi * dZ
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s = 0.0;
                    for (int k = 0; k < n; ++k) s += zi.at(i, k) * dz.at(k, j);
                    t.at(i, j) = s;
                }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s = 0.0;
                    for (int k = 0; k < n; ++k) s += t.at(i, k) * x.at(k, j);
                    dx.at(i, j) = mu * zi.at(i, j) - x.at(i, j) - s;
                }
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    dx.set_sym(i, j, 0.5 * (dx.at(i, j) + dx.at(j, i)));
        }

        const auto line_search = [&](const SymMatrix& base, const SymMatrix& step) {
            double alpha = 1.0;
            SymMatrix trial(n), lower;
            for (int tries = 0; tries < 60; ++tries) {
                for (std::size_t i = 0; i < trial.a.size(); ++i)
                    trial.a[i] = base.a[i] + alpha * step.a[i];
                if (cholesky(trial, lower)) return alpha < 1.0 ? max_step * alpha : alpha;
                alpha *= 0.8;
            }
            return 0.0;
        };

        double alpha_p = line_search(x, dx);
        double alpha_d = line_search(z, dz);
        if (alpha_p == 0.0 && alpha_d == 0.0) break;

        for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += alpha_p * dx.a[i];
        for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] += alpha_d * dz.a[i];
        for (int e = 0; e < m; ++e) y[e] += alpha_d * dy[e];

        mu = frobenius_inner(z, x) / (2.0 * n);
        if (alpha_p + alpha_d > 1.8) mu *= 0.5;
    }

    certify();
    if (best_upper - best_lower > gap_tol) {
        SymMatrix xf;
        double lo = detail::face_round(g, edges, detail::dual_slack(g, edges, best_y),
                                       std::min(n, 6), xf);
        if (lo > best_lower) { best_lower = lo; best_x = xf; }
    }
    // the two certificates are evaluated in floating point, so they can cross
    // by machine epsilon on exactly integral optima; keep the interval ordered
    if (best_lower > best_upper) best_lower = best_upper;
    res.lower = best_lower;
    res.upper = best_upper;
    res.x_opt = best_x;
    res.iterations = iter;
    res.converged = best_upper - best_lower <= gap_tol;
    return res;
}

struct ClosedForm {
    long long a = 0, b = 0, c = 0, d = 1;  // (a + b*sqrt(2) + c*sqrt(5)) / d
    double value = 0.0;
    std::string text;
};

// Reporting aid: match a numeric value against small rationals p/q
// (q <= 12, |p| <= 144) and small combinations (a + b*sqrt(2) + c*sqrt(5))/d.
// Candidates are scanned in order of increasing complexity, so the simplest
// matching form wins.
inline std::optional<ClosedForm> recognize_algebraic(double value, double tol = 1e-6) {
    if (!(tol > 0)) throw std::invalid_argument("recognize_algebraic: tol must be > 0");

    const auto format = [](long long a, long long b, long long c, long long d) {
        std::string s;
        auto term = [&](long long coef, const char* root) {
            if (coef == 0) return;
            if (!s.empty()) s += coef > 0 ? " + " : " - ";
            else if (coef < 0) s += "-";
            long long mag = std::llabs(coef);
            if (*root == '\0') { s += std::to_string(mag); return; }
            if (mag != 1) s += std::to_string(mag) + "*";
            s += root;
        };
        term(a, "");
        term(b, "sqrt(2)");
        term(c, "sqrt(5)");
        if (s.empty()) s = "0";
        if (d != 1) {
            int terms = (a != 0) + (b != 0) + (c != 0);
            if (terms > 1) s = "(" + s + ")";
            s += "/" + std::to_string(d);
        }
        return s;
    };

    for (long long q = 1; q <= 12; ++q) {
        long long p = std::llround(value * static_cast<double>(q));
        if (std::llabs(p) > 144) continue;
        double approx = static_cast<double>(p) / static_cast<double>(q);
        if (std::abs(value - approx) <= tol && std::gcd(std::llabs(p), q) == 1) {
            ClosedForm cf{p, 0, 0, q, approx, format(p, 0, 0, q)};
            return cf;
        }
    }

    const double s2 = std::sqrt(2.0), s5 = std::sqrt(5.0);
    std::optional<ClosedForm> best;
    long long best_score = 0;
    for (long long d = 1; d <= 12; ++d)
        for (long long a = -20; a <= 20; ++a)
            for (long long b = -8; b <= 8; ++b)
                for (long long c = -8; c <= 8; ++c) {
                    if (b == 0 && c == 0) continue;  // pure rationals handled above
                    if (std::gcd(std::gcd(std::llabs(a), std::llabs(b)),
                                 std::gcd(std::llabs(c), d)) != 1) continue;
                    double approx = (a + b * s2 + c * s5) / static_cast<double>(d);
                    if (std::abs(value - approx) > tol) continue;
                    long long score = std::llabs(a) + std::llabs(b) + std::llabs(c) + d;
                    if (!best || score < best_score) {
                        best = ClosedForm{a, b, c, d, approx, format(a, b, c, d)};
                        best_score = score;
                    }
                }
    return best;
}

}  // namespace qcg
