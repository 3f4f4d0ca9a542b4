#pragma once

// Closed-form projection kernels shared by the splitting method: a weighted
// simplex projection and two projections onto the positive semidefinite cone
// (plain, and intersected with a fixed-trace hyperplane).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hamqap/errors.hpp"

namespace hamqap {

/// Solves  min 0.5 * sum_i w_i * (x_i - y_i / w_i)^2
///         s.t. w^T x = c, x >= 0
/// for positive weights w. The data vector y is the linear term of the
/// underlying least-squares problem, so the unconstrained solution is y / w.
///
/// Candidates x_i = max(y_i / w_i + tau, 0) are scanned over prefixes of the
/// coordinates ordered by y_i / w_i descending; the largest prefix with a
/// positive boundary value determines tau. Ties are broken stably by
/// original index, so equal inputs map to equal outputs deterministically.
inline Eigen::VectorXd project_weighted_simplex(const Eigen::VectorXd& y,
                                                const Eigen::VectorXd& w, double c) {
    const int m = static_cast<int>(y.size());
    if (w.size() != m) throw InputError("project_weighted_simplex: size mismatch");
    if (m == 0) throw InputError("project_weighted_simplex: empty input");
    if ((w.array() <= 0.0).any())
        throw InputError("project_weighted_simplex: weights must be positive");
    if (c < 0.0) throw InputError("project_weighted_simplex: negative budget is infeasible");
    if (c == 0.0) return Eigen::VectorXd::Zero(m);

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return y(a) / w(a) > y(b) / w(b); });

    // The one-element prefix is always admissible for c > 0, since
    // y_(1) / w_(1) + (c - y_(1)) / w_(1) = c / w_(1) > 0.
    double prefix_y = y(order[0]), prefix_w = w(order[0]);
    double tau = (c - prefix_y) / prefix_w;
    for (int k = 1; k < m; ++k) {
        const int i = order[k];
        prefix_y += y(i);
        prefix_w += w(i);
        const double shift = (c - prefix_y) / prefix_w;
        if (y(i) / w(i) + shift > 0.0) tau = shift;
    }

    Eigen::VectorXd x(m);
    for (int i = 0; i < m; ++i) x(i) = std::max(y(i) / w(i) + tau, 0.0);
    return x;
}

namespace detail {

inline Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> symmetric_eig(const Eigen::MatrixXd& M) {
    if (M.rows() != M.cols()) throw InputError("psd projection: matrix must be square");
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (M + M.transpose()));
}

}  // namespace detail

/// Nearest (Frobenius) positive semidefinite matrix: negative eigenvalues
/// are clipped to zero.
inline Eigen::MatrixXd project_psd(const Eigen::MatrixXd& M) {
    const auto eig = detail::symmetric_eig(M);
    if (eig.eigenvalues().minCoeff() >= 0.0) return 0.5 * (M + M.transpose());
    const Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0);
    return eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();
}

/// Nearest positive semidefinite matrix with trace exactly tau: the
/// eigenvalues are projected onto the simplex {lam >= 0, sum lam = tau}.
inline Eigen::MatrixXd project_psd_trace(const Eigen::MatrixXd& M, double tau) {
    const auto eig = detail::symmetric_eig(M);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(eig.eigenvalues().size());
    const Eigen::VectorXd lam = project_weighted_simplex(eig.eigenvalues(), ones, tau);
    return eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace hamqap
