#pragma once

// Independent reference implementations used to validate the solver modules.
// Everything in this header favors obvious correctness over speed and is
// meant for test-scale inputs only.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "hamqap/errors.hpp"

namespace hamqap::oracle {

/// QAP cost sum_{i,j} A(i,j) * B(perm(i), perm(j)) of one assignment.
inline double qap_cost(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                       const std::vector<int>& perm) {
    const int n = static_cast<int>(A.rows());
    double cost = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cost += A(i, j) * B(perm[i], perm[j]);
    return cost;
}

/// Exact QAP optimum by enumerating all n! assignments. Guarded at n <= 10.
inline double brute_force_qap(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                              std::vector<int>* best_perm = nullptr) {
    const int n = static_cast<int>(A.rows());
    if (n < 1 || n > 10) throw InputError("brute_force_qap: n must be in [1, 10]");
    if (A.cols() != n || B.rows() != n || B.cols() != n)
        throw InputError("brute_force_qap: A and B must be square of equal size");

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        const double c = qap_cost(A, B, perm);
        if (c < best) {
            best = c;
            if (best_perm) *best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Reference solution of
///   min 0.5 * sum_i w_i * (x_i - y_i / w_i)^2   s.t.  w^T x = c,  x >= 0
/// by enumerating all 2^m support patterns and solving the equality-constrained
/// problem on each. Guarded at m <= 20.
inline Eigen::VectorXd brute_force_weighted_simplex(const Eigen::VectorXd& y,
                                                    const Eigen::VectorXd& w,
                                                    double c) {
    const int m = static_cast<int>(y.size());
    if (m < 1 || m > 20) throw InputError("brute_force_weighted_simplex: m must be in [1, 20]");
    if (w.size() != m || (w.array() <= 0.0).any())
        throw InputError("brute_force_weighted_simplex: weights must be positive");
    if (c < 0.0) throw InputError("brute_force_weighted_simplex: budget must be nonnegative");

    auto weighted_dist = [&](const Eigen::VectorXd& x) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
            const double dlt = x(i) - y(i) / w(i);
            s += w(i) * dlt * dlt;
        }
        return 0.5 * s;
    };

    Eigen::VectorXd best;
    double best_val = std::numeric_limits<double>::infinity();
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
        if (mask == 0) {
            if (c != 0.0) continue;  // empty support only meets a zero budget
        } else {
            double sum_y = 0.0, sum_w = 0.0;
            for (int i = 0; i < m; ++i)
                if (mask & (1ul << i)) {
                    sum_y += y(i);
                    sum_w += w(i);
                }
            const double tau = (c - sum_y) / sum_w;
            bool feasible = true;
            for (int i = 0; i < m; ++i)
                if (mask & (1ul << i)) {
                    x(i) = y(i) / w(i) + tau;
                    if (x(i) < -1e-12) {
                        feasible = false;
                        break;
                    }
                    x(i) = std::max(x(i), 0.0);
                }
            if (!feasible) continue;
        }
        const double val = weighted_dist(x);
        if (val < best_val - 1e-15) {
            best_val = val;
            best = x;
        }
    }
    return best;
}

/// Residuals of a dense matrix against the doubly nonnegative lifting of the
/// assignment polytope over S^{n^2}:
///   <J, Y> = n^2,  gangster entries = 0,  <I kron E_rr, Y> = 1,
///   <E_cc kron I, Y> = 1,  Y symmetric, Y psd, Y >= 0.
/// Vec convention is column-major: coordinate c*n + r holds X(r, c), so the
/// Kronecker index (c1*n + r1, c2*n + r2) carries A(c1,c2) * B(r1,r2).
struct DnnResiduals {
    double budget = 0.0;     // |<J, Y> - n^2|
    double gangster = 0.0;   // max |Y| over the gangster support
    double row_sum = 0.0;    // max_r |<I kron E_rr, Y> - 1|
    double col_sum = 0.0;    // max_c |<E_cc kron I, Y> - 1|
    double symmetry = 0.0;   // max |Y - Y^T|
    double neg_entry = 0.0;  // max(0, -min entry)
    double neg_eig = 0.0;    // max(0, -min eigenvalue)

    double max() const {
        return std::max({budget, gangster, row_sum, col_sum, symmetry, neg_entry, neg_eig});
    }
};

inline DnnResiduals dense_dnn_residuals(const Eigen::MatrixXd& Y, int n) {
    if (n < 1 || n > 16) throw InputError("dense_dnn_residuals: n must be in [1, 16]");
    if (Y.rows() != n * n || Y.cols() != n * n)
        throw InputError("dense_dnn_residuals: Y must be n^2 x n^2");

    DnnResiduals res;
    res.budget = std::abs(Y.sum() - static_cast<double>(n) * n);
    res.symmetry = (Y - Y.transpose()).cwiseAbs().maxCoeff();
    res.neg_entry = std::max(0.0, -Y.minCoeff());

    auto idx = [n](int c, int r) { return c * n + r; };
    for (int c = 0; c < n; ++c)
        for (int r1 = 0; r1 < n; ++r1)
            for (int r2 = 0; r2 < n; ++r2)
                if (r1 != r2)
                    res.gangster = std::max(res.gangster, std::abs(Y(idx(c, r1), idx(c, r2))));
    for (int r = 0; r < n; ++r)
        for (int c1 = 0; c1 < n; ++c1)
            for (int c2 = 0; c2 < n; ++c2)
                if (c1 != c2)
                    res.gangster = std::max(res.gangster, std::abs(Y(idx(c1, r), idx(c2, r))));

    for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int c = 0; c < n; ++c) s += Y(idx(c, r), idx(c, r));
        res.row_sum = std::max(res.row_sum, std::abs(s - 1.0));
    }
    for (int c = 0; c < n; ++c) {
        double s = 0.0;
        for (int r = 0; r < n; ++r) s += Y(idx(c, r), idx(c, r));
        res.col_sum = std::max(res.col_sum, std::abs(s - 1.0));
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (Y + Y.transpose()),
                                                       Eigen::EigenvaluesOnly);
    res.neg_eig = std::max(0.0, -eig.eigenvalues().minCoeff());
    return res;
}

/// Rank-one lift vec(X) vec(X)^T of the permutation "r = perm(c)".
inline Eigen::MatrixXd permutation_lift(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n * n);
    for (int c = 0; c < n; ++c) x(c * n + perm[c]) = 1.0;
    return x * x.transpose();
}

}  // namespace hamqap::oracle
