#pragma once

// Facial reduction data for the doubly nonnegative relaxation of a QAP whose
// distance matrix lives in a Hamming Bose-Mesner algebra. The exposing vector
//   W = I kron (n J) + J kron (n I - 2 J)
// is positive semidefinite of rank 2(n - 1), vanishes on every feasible point
// of the relaxation, and commutes with the symmetry group, so its block
// diagonalization gives one nullspace basis per eigenspace of the scheme:
//   block 0: n^2 I - n J  (nullspace span{e}),
//   block k: n J          (nullspace e-perp), k >= 1.

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "hamqap/errors.hpp"
#include "hamqap/hamming_scheme.hpp"

namespace hamqap {

/// Largest n for which dense n^2 x n^2 matrices may be formed (tests only).
inline constexpr int kDenseLiftCap = 32;

using BlockVars = std::vector<Eigen::MatrixXd>;

/// Kronecker product with index convention (c1*n + r1, c2*n + r2) ->
/// A(c1, c2) * B(r1, r2), matching the column-major vec used throughout.
inline Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    Eigen::MatrixXd K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

/// Dense exposing vector W over S^{n^2}; test scale only.
inline Eigen::MatrixXd exposing_vector_full(int n) {
    if (n < 2 || n > kDenseLiftCap)
        throw InputError("exposing_vector_full: dense form capped at 2 <= n <= 32");
    Eigen::MatrixXd W(n * n, n * n);
    for (int c1 = 0; c1 < n; ++c1)
        for (int r1 = 0; r1 < n; ++r1)
            for (int c2 = 0; c2 < n; ++c2)
                for (int r2 = 0; r2 < n; ++r2)
                    W(c1 * n + r1, c2 * n + r2) =
                        (c1 == c2 ? n : 0.0) + (r1 == r2 ? n : 0.0) - 2.0;
    return W;
}

/// Coefficient matrices W_i of W = sum_i A_i kron W_i:
///   W_0 = (n - 2) J + n I,  W_i = n I - 2 J for i >= 1.
inline BlockVars exposing_class_matrices(const HammingScheme& s) {
    const int n = s.n;
    const Eigen::MatrixXd J = Eigen::MatrixXd::Ones(n, n);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    BlockVars W(s.d + 1, n * I - 2.0 * J);
    W[0] = (n - 2.0) * J + n * I;
    return W;
}

/// Eigenspace blocks of the exposing vector, one per eigenvalue of the scheme.
inline BlockVars exposing_blocks(const HammingScheme& s) {
    const int n = s.n;
    const Eigen::MatrixXd J = Eigen::MatrixXd::Ones(n, n);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    BlockVars blocks(s.d + 1, n * J);
    blocks[0] = static_cast<double>(n) * n * I - n * J;
    return blocks;
}

/// Orthonormal nullspace bases of the exposing blocks. Block 0 has the
/// one-dimensional nullspace span{e}; blocks 1..d share the (n-1)-dimensional
/// nullspace orthogonal to e, built deterministically by Gram-Schmidt with
/// one reorthogonalization pass from the columns of [I; -e^T].
struct ReductionData {
    int n = 0;
    int d = 0;
    Eigen::MatrixXd V0;              // n x 1
    Eigen::MatrixXd V1;              // n x (n-1), shared by blocks 1..d
    std::vector<int> block_dims;     // (1, n-1, ..., n-1)

    const Eigen::MatrixXd& V(int k) const { return k == 0 ? V0 : V1; }
};

inline ReductionData nullspace_bases(const HammingScheme& s) {
    const int n = s.n;
    if (n < 2) throw InputError("nullspace_bases: need n >= 2");
    ReductionData r;
    r.n = n;
    r.d = s.d;
    r.V0 = Eigen::MatrixXd::Constant(n, 1, 1.0 / std::sqrt(static_cast<double>(n)));
    r.V1.resize(n, n - 1);
    for (int j = 0; j < n - 1; ++j) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
        v(j) = 1.0;
        v(n - 1) = -1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (int k = 0; k < j; ++k) v -= r.V1.col(k).dot(v) * r.V1.col(k);
        r.V1.col(j) = v / v.norm();
    }
    r.block_dims.assign(s.d + 1, n - 1);
    r.block_dims[0] = 1;
    return r;
}

/// Algebra blocks of the barycenter of the feasible region:
///   Y_0 = I / n,  Y_i = J / n^2 - (n I - J) / (n^2 (n - 1)) for i >= 1
/// (zero diagonal, off-diagonal entries 1 / (n (n - 1))).
inline BlockVars barycenter_blocks(const HammingScheme& s) {
    const int n = s.n;
    const Eigen::MatrixXd J = Eigen::MatrixXd::Ones(n, n);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    BlockVars Y(s.d + 1,
                J / (static_cast<double>(n) * n) -
                    (n * I - J) / (static_cast<double>(n) * n * (n - 1)));
    Y[0] = I / n;
    return Y;
}

/// Dense barycenter (J kron J) / n^2 + ((nI - J) kron (nI - J)) / (n^2 (n-1));
/// test scale only.
inline Eigen::MatrixXd barycenter_full(int n) {
    if (n < 2 || n > kDenseLiftCap)
        throw InputError("barycenter_full: dense form capped at 2 <= n <= 32");
    const Eigen::MatrixXd J = Eigen::MatrixXd::Ones(n, n);
    const Eigen::MatrixXd K = n * Eigen::MatrixXd::Identity(n, n) - J;
    return kron(J, J) / (static_cast<double>(n) * n) +
           kron(K, K) / (static_cast<double>(n) * n * (n - 1));
}

/// Dense lift sum_i A_i kron Y_i of algebra blocks; test scale only.
inline Eigen::MatrixXd lift_blocks(const HammingScheme& s, const BlockVars& Y) {
    if (s.n > kDenseLiftCap) throw InputError("lift_blocks: dense lift capped at n <= 32");
    if (static_cast<int>(Y.size()) != s.d + 1)
        throw InputError("lift_blocks: expected d + 1 blocks");
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(s.n * s.n, s.n * s.n);
    for (int i = 0; i <= s.d; ++i) full += kron(basis_matrix(s, i), Y[i]);
    return full;
}

}  // namespace hamqap
