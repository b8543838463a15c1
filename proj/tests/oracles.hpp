#pragma once

// Reference implementations used only by tests. None of them call into the library's
// simulator, solver or PCA code.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;

/// Kronecker product of one 2x2 factor per qubit. factors[q] acts on qubit q, and
/// qubit 0 is the least significant bit, so it is the rightmost factor.
inline MatrixXcd tensor(const std::vector<MatrixXcd>& factors) {
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        MatrixXcd next = Eigen::kroneckerProduct(out, *it).eval();
        out = std::move(next);
    }
    return out;
}

inline MatrixXcd pauli_z() {
    MatrixXcd z(2, 2);
    z << 1, 0, 0, -1;
    return z;
}

inline MatrixXcd hadamard() {
    MatrixXcd h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

/// Z on the listed qubits, identity elsewhere.
inline MatrixXcd z_string(int n, std::initializer_list<int> qubits) {
    std::vector<MatrixXcd> f(n, MatrixXcd::Identity(2, 2));
    for (int q : qubits) f[q] = pauli_z();
    return tensor(f);
}

inline std::vector<std::pair<int, int>> linear_pairs(int n) {
    std::vector<std::pair<int, int>> p;
    for (int k = 0; k + 1 < n; ++k) p.emplace_back(k, k + 1);
    return p;
}

inline std::vector<std::pair<int, int>> full_pairs(int n) {
    std::vector<std::pair<int, int>> p;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) p.emplace_back(j, k);
    return p;
}

/// Dense unitary exp(i * H(x)) with H = sum_k x_k Z_k + sum_(j,k) (pi - x_j)(pi - x_k) Z_j Z_k,
/// exponentiated by the generic matrix exponential.
inline MatrixXcd phase_unitary(const std::vector<double>& x,
                               const std::vector<std::pair<int, int>>& pairs) {
    const int n = static_cast<int>(x.size());
    const Eigen::Index dim = Eigen::Index{1} << n;
    MatrixXcd h = MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < n; ++k) h += x[k] * z_string(n, {k});
    for (auto [j, k] : pairs) h += (kPi - x[j]) * (kPi - x[k]) * z_string(n, {j, k});
    MatrixXcd ih = std::complex<double>(0.0, 1.0) * h;
    return ih.exp();
}

/// (U(x) H^n)^reps |0...0> built from dense matrices.
inline VectorXcd dense_encode(const std::vector<double>& x, int reps,
                              const std::vector<std::pair<int, int>>& pairs) {
    const int n = static_cast<int>(x.size());
    const MatrixXcd layer =
        phase_unitary(x, pairs) * tensor(std::vector<MatrixXcd>(n, hadamard()));
    VectorXcd psi = VectorXcd::Zero(Eigen::Index{1} << n);
    psi(0) = 1.0;
    for (int r = 0; r < reps; ++r) psi = layer * psi;
    return psi;
}

/// Exact optimum of the binary SVM dual
///     max sum(a) - 1/2 a^T Q a,  Q_ij = y_i y_j K_ij,  0 <= a <= C,  y^T a = 0
/// by enumerating every (at lower bound, at upper bound, free) partition and solving the
/// stationarity system on the free set. Practical for n <= 8.
struct DualSolution {
    VectorXd alpha;
    double bias = 0.0;
    double objective = -std::numeric_limits<double>::infinity();
};

inline double dual_objective(const MatrixXd& k, const VectorXd& y, const VectorXd& a) {
    const VectorXd ya = y.cwiseProduct(a);
    return a.sum() - 0.5 * ya.dot(k * ya);
}

inline DualSolution solve_dual_exact(const MatrixXd& k, const VectorXd& y, double c) {
    const int n = static_cast<int>(y.size());
    int combos = 1;
    for (int i = 0; i < n; ++i) combos *= 3;

    DualSolution best;
    std::vector<int> state(n);
    for (int code = 0; code < combos; ++code) {
        int rest = code;
        std::vector<int> free;
        VectorXd a = VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) {
            state[i] = rest % 3;
            rest /= 3;
            if (state[i] == 1) a(i) = c;
            if (state[i] == 2) free.push_back(i);
        }
        const int f = static_cast<int>(free.size());
        double bias = std::numeric_limits<double>::quiet_NaN();
        if (f > 0) {
            // [Q_FF y_F; y_F^T 0] [a_F; b] = [1 - Q_FB a_B; -y_B^T a_B]
            MatrixXd sys = MatrixXd::Zero(f + 1, f + 1);
            VectorXd rhs = VectorXd::Zero(f + 1);
            for (int r = 0; r < f; ++r) {
                const int i = free[r];
                for (int s = 0; s < f; ++s) sys(r, s) = y(i) * y(free[s]) * k(i, free[s]);
                sys(r, f) = y(i);
                sys(f, r) = y(i);
                double acc = 1.0;
                for (int j = 0; j < n; ++j)
                    if (state[j] == 1) acc -= y(i) * y(j) * k(i, j) * a(j);
                rhs(r) = acc;
            }
            double eq = 0.0;
            for (int j = 0; j < n; ++j)
                if (state[j] == 1) eq -= y(j) * a(j);
            rhs(f) = eq;
            const VectorXd sol = sys.completeOrthogonalDecomposition().solve(rhs);
            if ((sys * sol - rhs).norm() > 1e-9) continue;
            for (int r = 0; r < f; ++r) a(free[r]) = sol(r);
            bias = sol(f);
        }
        if (a.minCoeff() < -1e-12 || a.maxCoeff() > c + 1e-12) continue;
        if (std::abs(y.dot(a)) > 1e-9) continue;
        const double obj = dual_objective(k, y, a);
        if (obj > best.objective + 1e-12) {
            best.alpha = a;
            best.objective = obj;
            best.bias = bias;
        }
    }

    if (std::isnan(best.bias)) {
        // No free variable: the bias lies anywhere in the interval allowed by the
        // bound-variable KKT conditions; take its midpoint.
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        const VectorXd g = k * y.cwiseProduct(best.alpha);
        for (int i = 0; i < n; ++i) {
            // y_i (g_i + b) >= 1 at the lower bound, <= 1 at the upper bound.
            const bool at_upper = best.alpha(i) > 0.5 * c;
            const double edge = y(i) - g(i);
            if ((y(i) > 0) != at_upper) lo = std::max(lo, edge);
            else hi = std::min(hi, edge);
        }
        if (std::isinf(lo)) lo = hi;
        if (std::isinf(hi)) hi = lo;
        best.bias = 0.5 * (lo + hi);
    }
    return best;
}

/// Dual optimum for 4 points with labels (+1, +1, -1, -1) by brute force: a grid of step
/// `step` over (a_0, a_2) and the exact maximum along the remaining feasible direction.
/// The equality constraint gives a_0 + a_1 = a_2 + a_3 = s.
inline double grid_dual_objective_4(const MatrixXd& k, double c, double step) {
    const VectorXd y = (VectorXd(4) << 1, 1, -1, -1).finished();
    const int cells = static_cast<int>(std::lround(c / step));
    double best = -std::numeric_limits<double>::infinity();
    for (int p = 0; p <= cells; ++p) {
        for (int q = 0; q <= cells; ++q) {
            const double a0 = p * step;
            const double a2 = q * step;
            // a(s) = (a0, s - a0, a2, s - a2); objective is concave quadratic in s.
            const double s_lo = std::max(a0, a2);
            const double s_hi = std::min(a0, a2) + c;
            if (s_lo > s_hi) continue;
            const VectorXd base = (VectorXd(4) << a0, -a0, a2, -a2).finished();
            const VectorXd dir = (VectorXd(4) << 0, 1, 0, 1).finished();
            auto obj = [&](double s) { return dual_objective(k, y, base + s * dir); };
            const VectorXd yd = y.cwiseProduct(dir);
            const VectorXd yb = y.cwiseProduct(base);
            const double curv = yd.dot(k * yd);
            const double slope = dir.sum() - yb.dot(k * yd);
            double s_star = curv > 1e-15 ? slope / curv : (slope > 0 ? s_hi : s_lo);
            s_star = std::clamp(s_star, s_lo, s_hi);
            best = std::max({best, obj(s_star), obj(s_lo), obj(s_hi)});
        }
    }
    return best;
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues in descending order with matching eigenvector columns.
inline std::pair<VectorXd, MatrixXd> jacobi_eigen(MatrixXd a) {
    const Eigen::Index n = a.rows();
    MatrixXd v = MatrixXd::Identity(n, n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-30 * std::max(1.0, a.squaredNorm())) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cs = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * cs;
                for (Eigen::Index r = 0; r < n; ++r) {
                    const double arp = a(r, p), arq = a(r, q);
                    a(r, p) = cs * arp - sn * arq;
                    a(r, q) = sn * arp + cs * arq;
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const double apr = a(p, r), aqr = a(q, r);
                    a(p, r) = cs * apr - sn * aqr;
                    a(q, r) = sn * apr + cs * aqr;
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const double vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = cs * vrp - sn * vrq;
                    v(r, q) = sn * vrp + cs * vrq;
                }
            }
        }
    }
    std::vector<Eigen::Index> order(n);
    for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) > a(j, j); });
    VectorXd values(n);
    MatrixXd vectors(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        values(i) = a(order[i], order[i]);
        vectors.col(i) = v.col(order[i]);
    }
    return {values, vectors};
}

}  // namespace oracle
