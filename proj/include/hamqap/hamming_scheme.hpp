#pragma once

// The Hamming association scheme H(d, q) on n = q^d words and its
// Bose-Mesner algebra. Words are indexed by integers 0..n-1 whose base-q
// digits are read least significant first; the distance between two words
// is the number of differing digits, which is independent of digit order.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hamqap/errors.hpp"

namespace hamqap {

/// Exact binomial coefficient; inputs kept small enough for int64.
inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    __int128 r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<long long>(r);
}

/// Krawtchouk value K_i(j) for H(d, q):
///   K_i(j) = sum_h (-1)^h (q-1)^(i-h) C(j, h) C(d-j, i-h).
/// Evaluated in exact integer arithmetic.
inline long long krawtchouk(int d, int q, int i, int j) {
    if (d < 0 || q < 2 || i < 0 || i > d || j < 0 || j > d)
        throw InputError("krawtchouk: need 0 <= i, j <= d and q >= 2");
    __int128 sum = 0;
    for (int h = 0; h <= i; ++h) {
        __int128 term = binomial(j, h);
        term *= binomial(d - j, i - h);
        for (int t = 0; t < i - h; ++t) term *= (q - 1);
        sum += (h % 2 == 0) ? term : -term;
    }
    return static_cast<long long>(sum);
}

/// Character table, multiplicities, and sizes of H(d, q).
/// Invariants: P(0, j) = 1, P(i, 0) = mu_i, column sums of P are n * e_0,
/// and sum_j mu_j P(r, j) P(s, j) = n * mu_s * delta_{rs}.
struct HammingScheme {
    int d = 0;
    int q = 2;
    int n = 1;                          // q^d
    Eigen::MatrixXd P;                  // (d+1) x (d+1), P(i, j) = K_i(j)
    std::vector<long long> P_int;       // same values, row-major, exact
    Eigen::VectorXd mu;                 // mu_j = C(d, j) (q-1)^j
    std::vector<long long> mu_int;

    long long p_int(int i, int j) const { return P_int[static_cast<size_t>(i) * (d + 1) + j]; }
};

inline HammingScheme build_scheme(int d, int q) {
    if (d < 0 || d > 24 || q < 2)
        throw InputError("build_scheme: need 0 <= d <= 24 and q >= 2");
    const double nd = std::pow(static_cast<double>(q), d);
    if (nd > (1 << 30)) throw InputError("build_scheme: q^d too large");

    HammingScheme s;
    s.d = d;
    s.q = q;
    s.n = 1;
    for (int t = 0; t < d; ++t) s.n *= q;
    s.P.resize(d + 1, d + 1);
    s.P_int.resize(static_cast<size_t>(d + 1) * (d + 1));
    s.mu.resize(d + 1);
    s.mu_int.resize(d + 1);
    for (int j = 0; j <= d; ++j) {
        long long m = binomial(d, j);
        for (int t = 0; t < j; ++t) m *= (q - 1);
        s.mu_int[j] = m;
        s.mu(j) = static_cast<double>(m);
    }
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j) {
            const long long v = krawtchouk(d, q, i, j);
            s.P_int[static_cast<size_t>(i) * (d + 1) + j] = v;
            s.P(i, j) = static_cast<double>(v);
        }
    return s;
}

/// Number of differing base-q digits between words u and v.
inline int hamming_distance(long long u, long long v, int d, int q) {
    int dist = 0;
    for (int t = 0; t < d; ++t) {
        if (u % q != v % q) ++dist;
        u /= q;
        v /= q;
    }
    return dist;
}

/// Dense 0/1 basis matrix B_i with (B_i)_{uv} = 1 iff dist(u, v) = i.
/// Dense construction is for test scale; guarded at n <= 4096.
inline Eigen::MatrixXd basis_matrix(const HammingScheme& s, int i) {
    if (i < 0 || i > s.d) throw InputError("basis_matrix: class index out of range");
    if (s.n > 4096) throw InputError("basis_matrix: dense basis capped at n <= 4096");
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(s.n, s.n);
    for (int u = 0; u < s.n; ++u)
        for (int v = 0; v < s.n; ++v)
            if (hamming_distance(u, v, s.d, s.q) == i) B(u, v) = 1.0;
    return B;
}

/// Least-squares coefficients of A in the span of {B_0, ..., B_d} plus the
/// max-norm residual, computed by classifying entries on demand (no dense
/// basis matrices are formed).
inline Eigen::VectorXd algebra_coefficients(const HammingScheme& s, const Eigen::MatrixXd& A,
                                            double* residual_out = nullptr) {
    if (A.rows() != s.n || A.cols() != s.n)
        throw InputError("algebra_coefficients: matrix size does not match the scheme");
    Eigen::VectorXd sums = Eigen::VectorXd::Zero(s.d + 1);
    for (int u = 0; u < s.n; ++u)
        for (int v = 0; v < s.n; ++v) sums(hamming_distance(u, v, s.d, s.q)) += A(u, v);
    Eigen::VectorXd a(s.d + 1);
    for (int i = 0; i <= s.d; ++i) a(i) = sums(i) / (static_cast<double>(s.n) * s.mu(i));
    if (residual_out) {
        double res = 0.0;
        for (int u = 0; u < s.n; ++u)
            for (int v = 0; v < s.n; ++v)
                res = std::max(res, std::abs(A(u, v) - a(hamming_distance(u, v, s.d, s.q))));
        *residual_out = res;
    }
    return a;
}

/// Coefficients of A in the Bose-Mesner algebra of H(d, q), or a
/// NotInAlgebraError when the max-norm residual exceeds 1e-10 * max|A|.
inline Eigen::VectorXd decompose_in_algebra(const HammingScheme& s, const Eigen::MatrixXd& A) {
    double residual = 0.0;
    Eigen::VectorXd a = algebra_coefficients(s, A, &residual);
    const double scale = A.size() > 0 ? A.cwiseAbs().maxCoeff() : 0.0;
    if (residual > 1e-10 * scale)
        throw NotInAlgebraError(
            "matrix is not in the Hamming H(" + std::to_string(s.d) + "," + std::to_string(s.q) +
                ") algebra: max residual " + std::to_string(residual) +
                " exceeds 1e-10 * max|A|; entries must depend only on the Hamming distance "
                "of the row/column words",
            residual);
    return a;
}

/// Symmetric orthogonal diagonalizer of H(d, 2):
///   Q(u, v) = 2^(-d/2) * (-1)^(popcount(u & v)).
/// Q^T B_i Q is diagonal with value K_i(j) on words of weight j.
inline Eigen::MatrixXd hadamard_Q(int d) {
    if (d < 0 || d > 12) throw InputError("hadamard_Q: dense transform capped at d <= 12");
    const int n = 1 << d;
    const double scale = std::pow(2.0, -0.5 * d);
    Eigen::MatrixXd Q(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            Q(u, v) = (__builtin_popcount(static_cast<unsigned>(u & v)) % 2 == 0) ? scale : -scale;
    return Q;
}

}  // namespace hamqap
