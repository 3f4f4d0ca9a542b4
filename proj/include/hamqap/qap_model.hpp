#pragma once

// Reduced model of the doubly nonnegative QAP relaxation for instances whose
// first matrix lies in a Hamming Bose-Mesner algebra. Variables are the
// algebra blocks Y_0..Y_d of Y = sum_i A_i kron Y_i together with one reduced
// PSD block per eigenspace. The fixed coordinates (all of Y_0, the diagonals
// of Y_i) are eliminated, leaving the free off-diagonal entries with
// per-class weight n * mu_i and budget n^2 - n.

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "hamqap/errors.hpp"
#include "hamqap/facial_reduction.hpp"
#include "hamqap/hamming_scheme.hpp"

namespace hamqap {

struct QapInstance {
    std::string name;
    int n = 0;
    Eigen::MatrixXd A;   // must lie in the Hamming algebra (or B must; see build_model)
    Eigen::MatrixXd B;   // arbitrary symmetric
    bool integer_data = false;
};

struct ReducedModel {
    std::string name;
    bool integer_data = false;
    bool swapped = false;            // roles of A and B were exchanged at build time
    HammingScheme scheme;
    ReductionData reduction;
    Eigen::VectorXd a;               // algebra coefficients of the scheme matrix
    Eigen::MatrixXd B;               // the free symmetric matrix
    std::vector<Eigen::MatrixXd> C;  // C_j = sqrt(mu_j) * (sum_i a_i P(i,j)) * B
    Eigen::VectorXd class_weight;    // w_i = n * mu_i, the weight of every class-i coordinate
    double total_budget = 0.0;       // n^2
    double free_budget = 0.0;        // n^2 - n

    int n() const { return scheme.n; }
    int d() const { return scheme.d; }
};

/// Eigenspace combinations M_j = sum_i P(i, j) Y_i of algebra blocks.
inline BlockVars eigenspace_blocks(const HammingScheme& s, const BlockVars& Y) {
    BlockVars M(s.d + 1);
    for (int j = 0; j <= s.d; ++j) {
        M[j] = s.P(0, j) * Y[0];
        for (int i = 1; i <= s.d; ++i) M[j] += s.P(i, j) * Y[i];
    }
    return M;
}

/// Inverse of eigenspace_blocks via the orthogonality of the character table:
///   Y_i = (1 / (n mu_i)) * sum_j mu_j P(i, j) M_j.
inline BlockVars blocks_from_eigenspace(const HammingScheme& s, const BlockVars& M) {
    BlockVars Y(s.d + 1);
    for (int i = 0; i <= s.d; ++i) {
        Y[i] = Eigen::MatrixXd::Zero(s.n, s.n);
        for (int j = 0; j <= s.d; ++j) Y[i] += s.mu(j) * s.P(i, j) * M[j];
        Y[i] /= static_cast<double>(s.n) * s.mu(i);
    }
    return Y;
}

inline ReducedModel build_model(const QapInstance& instance) {
    const int n = instance.n;
    if (n < 2 || instance.A.rows() != n || instance.A.cols() != n || instance.B.rows() != n ||
        instance.B.cols() != n)
        throw InputError("build_model: instance matrices must be n x n with n >= 2");
    int d = 0;
    for (int m = n; m > 1; m /= 2, ++d)
        if (m % 2 != 0)
            throw InputError("build_model: n = " + std::to_string(n) +
                             " is not a power of 2; only H(d, 2) instances are supported");

    ReducedModel model;
    model.name = instance.name;
    model.integer_data = instance.integer_data;
    model.scheme = build_scheme(d, 2);

    Eigen::MatrixXd Bmat = instance.B;
    try {
        model.a = decompose_in_algebra(model.scheme, instance.A);
    } catch (const NotInAlgebraError& first_error) {
        // The objective is invariant under exchanging the two matrices, and
        // published instance files disagree about their order.
        try {
            model.a = decompose_in_algebra(model.scheme, instance.B);
        } catch (const NotInAlgebraError&) {
            throw first_error;
        }
        Bmat = instance.A;
        model.swapped = true;
    }
    if ((Bmat - Bmat.transpose()).cwiseAbs().maxCoeff() >
        1e-10 * std::max(1.0, Bmat.cwiseAbs().maxCoeff()))
        throw InputError("build_model: the free matrix must be symmetric");

    model.reduction = nullspace_bases(model.scheme);
    model.B = 0.5 * (Bmat + Bmat.transpose());
    const int dd = model.scheme.d;
    model.C.resize(dd + 1);
    for (int j = 0; j <= dd; ++j) {
        double coeff = 0.0;
        for (int i = 0; i <= dd; ++i) coeff += model.a(i) * model.scheme.P(i, j);
        model.C[j] = std::sqrt(model.scheme.mu(j)) * coeff * model.B;
    }
    model.class_weight.resize(dd + 1);
    for (int i = 0; i <= dd; ++i) model.class_weight(i) = n * model.scheme.mu(i);
    model.total_budget = static_cast<double>(n) * n;
    model.free_budget = static_cast<double>(n) * (n - 1);
    return model;
}

/// Objective sum_j <C_j, sqrt(mu_j) M_j>, equal to tr((A kron B) Y)
/// for the lifted Y.
inline double objective(const ReducedModel& model, const BlockVars& Y) {
    const BlockVars M = eigenspace_blocks(model.scheme, Y);
    double obj = 0.0;
    for (int j = 0; j <= model.d(); ++j)
        obj += std::sqrt(model.scheme.mu(j)) * (model.C[j].array() * M[j].array()).sum();
    return obj;
}

/// Constraint violations of a primal pair (Y blocks, reduced PSD blocks).
struct FeasibilityReport {
    double budget = 0.0;         // |sum_i w_i <J, Y_i> - n^2|
    double fixed = 0.0;          // max violation of Y_0 = I/n and diag(Y_i) = 0
    double nonneg = 0.0;         // max(0, -min entry of Y_i)
    double psd = 0.0;            // max(0, -min eigenvalue of R_j)
    double coupling_total = 0.0;
    std::vector<double> coupling;  // ||M_j - V_j R_j V_j^T||_F per block

    double max() const {
        double worst = std::max({budget, fixed, nonneg, psd});
        for (double c : coupling) worst = std::max(worst, c);
        return worst;
    }
};

inline FeasibilityReport check_feasibility(const ReducedModel& model, const BlockVars& Y,
                                           const std::vector<Eigen::MatrixXd>& R) {
    const int d = model.d();
    const int n = model.n();
    if (static_cast<int>(Y.size()) != d + 1 || static_cast<int>(R.size()) != d + 1)
        throw InputError("check_feasibility: expected d + 1 blocks");

    FeasibilityReport rep;
    double budget = 0.0;
    for (int i = 0; i <= d; ++i) budget += model.class_weight(i) * Y[i].sum();
    rep.budget = std::abs(budget - model.total_budget);

    rep.fixed = (Y[0] - Eigen::MatrixXd::Identity(n, n) / n).cwiseAbs().maxCoeff();
    for (int i = 1; i <= d; ++i)
        rep.fixed = std::max(rep.fixed, Y[i].diagonal().cwiseAbs().maxCoeff());
    for (int i = 0; i <= d; ++i) rep.nonneg = std::max(rep.nonneg, -Y[i].minCoeff());
    rep.nonneg = std::max(rep.nonneg, 0.0);

    const BlockVars M = eigenspace_blocks(model.scheme, Y);
    rep.coupling.resize(d + 1);
    for (int j = 0; j <= d; ++j) {
        const Eigen::MatrixXd& V = model.reduction.V(j);
        rep.coupling[j] = (M[j] - V * R[j] * V.transpose()).norm();
        rep.coupling_total += rep.coupling[j];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (R[j] + R[j].transpose()),
                                                           Eigen::EigenvaluesOnly);
        rep.psd = std::max(rep.psd, -eig.eigenvalues().minCoeff());
    }
    rep.psd = std::max(rep.psd, 0.0);
    return rep;
}

/// Restriction R_j = V_j^T M_j V_j of the eigenspace blocks; at any point on
/// the reduced face this inverts the coupling, and tr(R_j) = P(0, j) = 1.
inline std::vector<Eigen::MatrixXd> restrict_to_face(const ReducedModel& model,
                                                     const BlockVars& Y) {
    const BlockVars M = eigenspace_blocks(model.scheme, Y);
    std::vector<Eigen::MatrixXd> R(model.d() + 1);
    for (int j = 0; j <= model.d(); ++j) {
        const Eigen::MatrixXd& V = model.reduction.V(j);
        R[j] = V.transpose() * M[j] * V;
    }
    return R;
}

}  // namespace hamqap
