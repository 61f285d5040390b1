#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qcg {

// Dense symmetric matrix, full row-major storage kept exactly symmetric.
struct SymMatrix {
    int dim = 0;
    std::vector<double> a;

    SymMatrix() = default;
    explicit SymMatrix(int d) : dim(d), a(static_cast<std::size_t>(d) * d, 0.0) {
        if (d < 1) throw std::invalid_argument("SymMatrix: dimension must be >= 1");
    }

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }

    void set_sym(int i, int j, double v) { at(i, j) = v; at(j, i) = v; }

    static SymMatrix identity(int d) {
        SymMatrix m(d);
        for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
        return m;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a) m = std::max(m, std::abs(v));
        return m;
    }

    double trace() const {
        double t = 0.0;
        for (int i = 0; i < dim; ++i) t += at(i, i);
        return t;
    }

    double sum() const {
        double s = 0.0;
        for (double v : a) s += v;
        return s;
    }
};

inline double frobenius_inner(const SymMatrix& x, const SymMatrix& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) s += x.a[i] * y.a[i];
    return s;
}

struct EigenResult {
    std::vector<double> values;  // descending
    SymMatrix vectors;           // orthonormal columns, vectors.at(i, k) = component i of eigenvector k
};

// Cyclic Jacobi. Sweeps until the off-diagonal Frobenius norm drops below
// 1e-13 of the full norm; our matrices never exceed 16x16 so 64 sweeps is
// far more than enough.
inline EigenResult eigen_sym(const SymMatrix& m) {
    const int n = m.dim;
    SymMatrix a = m;
    SymMatrix v = SymMatrix::identity(n);

    double norm = std::sqrt(frobenius_inner(m, m));
    const double stop = 1e-13 * norm;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2.0 * a.at(p, q) * a.at(p, q);
        if (std::sqrt(off) <= stop) break;
        if (sweep == 63)
            throw std::runtime_error("eigen_sym: Jacobi iteration did not converge");

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a.at(p, q);
                if (apq == 0.0) continue;
                double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                for (int k = 0; k < n; ++k) {
                    double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return a.at(x, x) > a.at(y, y); });

    EigenResult res;
    res.values.resize(n);
    res.vectors = SymMatrix(n);
    for (int k = 0; k < n; ++k) {
        res.values[k] = a.at(order[k], order[k]);
        for (int i = 0; i < n; ++i) res.vectors.at(i, k) = v.at(i, order[k]);
    }
    return res;
}

inline double min_eigenvalue(const SymMatrix& m) {
    return eigen_sym(m).values.back();
}

inline bool is_psd(const SymMatrix& m, double tol) {
    if (tol < 0) throw std::invalid_argument("is_psd: tol must be >= 0");
    return min_eigenvalue(m) >= -tol;
}

// Cholesky factor (lower triangular) of an SPD matrix. Returns false if a
// pivot falls at or below 1e-12 of the largest entry.
inline bool cholesky(const SymMatrix& m, SymMatrix& lower) {
    const int n = m.dim;
    const double floor_pivot = 1e-12 * m.max_abs();
    lower = SymMatrix(n);
    for (int j = 0; j < n; ++j) {
        double d = m.at(j, j);
        for (int k = 0; k < j; ++k) d -= lower.at(j, k) * lower.at(j, k);
        if (d <= floor_pivot) return false;
        double ljj = std::sqrt(d);
        lower.at(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            double s = m.at(i, j);
            for (int k = 0; k < j; ++k) s -= lower.at(i, k) * lower.at(j, k);
            lower.at(i, j) = s / ljj;
        }
    }
    return true;
}

inline std::vector<double> solve_with_factor(const SymMatrix& lower, std::span<const double> rhs) {
    const int n = lower.dim;
    std::vector<double> x(rhs.begin(), rhs.end());
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < i; ++k) x[i] -= lower.at(i, k) * x[k];
        x[i] /= lower.at(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int k = i + 1; k < n; ++k) x[i] -= lower.at(k, i) * x[k];
        x[i] /= lower.at(i, i);
    }
    return x;
}

inline std::vector<double> solve_spd(const SymMatrix& m, std::span<const double> rhs) {
    if (static_cast<int>(rhs.size()) != m.dim)
        throw std::invalid_argument("solve_spd: rhs size mismatch");
    SymMatrix lower;
    if (!cholesky(m, lower))
        throw std::runtime_error("solve_spd: matrix is not positive definite");
    std::vector<double> x = solve_with_factor(lower, rhs);
    // two rounds of iterative refinement recover accuracy on the
    // ill-conditioned systems an interior-point method produces near optimum
    std::vector<double> res(m.dim);
    for (int round = 0; round < 2; ++round) {
        for (int i = 0; i < m.dim; ++i) {
            double r = rhs[i];
            for (int j = 0; j < m.dim; ++j) r -= m.at(i, j) * x[j];
            res[i] = r;
        }
        auto corr = solve_with_factor(lower, res);
        for (int i = 0; i < m.dim; ++i) x[i] += corr[i];
    }
    return x;
}

inline SymMatrix spd_inverse(const SymMatrix& m) {
    SymMatrix lower;
    if (!cholesky(m, lower))
        throw std::runtime_error("spd_inverse: matrix is not positive definite");
    SymMatrix inv(m.dim);
    std::vector<double> e(m.dim, 0.0);
    for (int j = 0; j < m.dim; ++j) {
        e[j] = 1.0;
        auto col = solve_with_factor(lower, e);
        e[j] = 0.0;
        for (int i = 0; i < m.dim; ++i) inv.at(i, j) = col[i];
    }
    // symmetrize against rounding
    for (int i = 0; i < m.dim; ++i)
        for (int j = i + 1; j < m.dim; ++j) {
            double v = 0.5 * (inv.at(i, j) + inv.at(j, i));
            inv.set_sym(i, j, v);
        }
    return inv;
}

}  // namespace qcg
