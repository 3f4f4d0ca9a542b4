#include "hamqap/hamming_scheme.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace hamqap;

namespace {

// Independent route to K_i(j): coefficient of z^i in
// (1 + (q-1) z)^(d-j) * (1 - z)^j, by exact polynomial multiplication.
std::vector<long long> krawtchouk_row_genfunc(int d, int q, int j) {
    std::vector<long long> poly{1};
    auto mul = [&](long long c0, long long c1) {  // multiply by (c0 + c1 z)
        std::vector<long long> out(poly.size() + 1, 0);
        for (size_t t = 0; t < poly.size(); ++t) {
            out[t] += c0 * poly[t];
            out[t + 1] += c1 * poly[t];
        }
        poly = std::move(out);
    };
    for (int t = 0; t < d - j; ++t) mul(1, q - 1);
    for (int t = 0; t < j; ++t) mul(1, -1);
    poly.resize(d + 1, 0);
    return poly;  // poly[i] = K_i(j)
}

}  // namespace

TEST(HammingScheme, KrawtchoukMatchesGeneratingFunction) {
    for (int q : {2, 3, 4})
        for (int d = 0; d <= 8; ++d)
            for (int j = 0; j <= d; ++j) {
                const auto row = krawtchouk_row_genfunc(d, q, j);
                for (int i = 0; i <= d; ++i)
                    ASSERT_EQ(krawtchouk(d, q, i, j), row[i])
                        << "d=" << d << " q=" << q << " i=" << i << " j=" << j;
            }
}

TEST(HammingScheme, KrawtchoukOrthogonalityExact) {
    for (int q : {2, 3, 4})
        for (int d = 1; d <= 8; ++d) {
            const HammingScheme s = build_scheme(d, q);
            for (int r = 0; r <= d; ++r)
                for (int c = 0; c <= d; ++c) {
                    long long acc = 0;
                    for (int j = 0; j <= d; ++j) acc += s.mu_int[j] * s.p_int(r, j) * s.p_int(c, j);
                    const long long expect = (r == c) ? static_cast<long long>(s.n) * s.mu_int[r] : 0;
                    ASSERT_EQ(acc, expect) << "d=" << d << " q=" << q << " r=" << r << " c=" << c;
                }
        }
}

TEST(HammingScheme, TableInvariants) {
    for (int q : {2, 3, 5})
        for (int d : {1, 2, 4, 6}) {
            const HammingScheme s = build_scheme(d, q);
            long long mu_total = 0;
            for (int j = 0; j <= d; ++j) {
                EXPECT_EQ(s.p_int(0, j), 1);
                EXPECT_EQ(s.p_int(j, 0), s.mu_int[j]);
                mu_total += s.mu_int[j];
                long long colsum = 0;
                for (int i = 0; i <= d; ++i) colsum += s.p_int(i, j);
                EXPECT_EQ(colsum, j == 0 ? s.n : 0);
            }
            EXPECT_EQ(mu_total, s.n);
        }
}

TEST(HammingScheme, DistanceCountsDifferingDigits) {
    // q = 2: distance is the popcount of the xor.
    for (int u = 0; u < 16; ++u)
        for (int v = 0; v < 16; ++v)
            EXPECT_EQ(hamming_distance(u, v, 4, 2),
                      __builtin_popcount(static_cast<unsigned>(u ^ v)));
    // q = 3, d = 2, words as (least significant digit, next digit).
    EXPECT_EQ(hamming_distance(1, 3, 2, 3), 2);  // (1,0) vs (0,1)
    EXPECT_EQ(hamming_distance(1, 2, 2, 3), 1);  // (1,0) vs (2,0)
    EXPECT_EQ(hamming_distance(4, 4, 2, 3), 0);
}

TEST(HammingScheme, BasisMatrices) {
    for (auto [d, q] : std::vector<std::pair<int, int>>{{3, 2}, {2, 3}}) {
        const HammingScheme s = build_scheme(d, q);
        Eigen::MatrixXd total = Eigen::MatrixXd::Zero(s.n, s.n);
        for (int i = 0; i <= d; ++i) {
            const Eigen::MatrixXd B = basis_matrix(s, i);
            EXPECT_EQ((B - B.transpose()).cwiseAbs().maxCoeff(), 0.0);
            for (int u = 0; u < s.n; ++u) EXPECT_EQ(B.row(u).sum(), s.mu(i));
            total += B;
        }
        EXPECT_EQ((total - Eigen::MatrixXd::Ones(s.n, s.n)).cwiseAbs().maxCoeff(), 0.0);
        EXPECT_EQ((basis_matrix(s, 0) - Eigen::MatrixXd::Identity(s.n, s.n)).cwiseAbs().maxCoeff(),
                  0.0);
    }
}

TEST(HammingScheme, ProductsStayInAlgebra) {
    const HammingScheme s = build_scheme(3, 2);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) {
            const Eigen::MatrixXd M = basis_matrix(s, i) * basis_matrix(s, j);
            double residual = 1.0;
            algebra_coefficients(s, M, &residual);
            EXPECT_LE(residual, 1e-12) << "i=" << i << " j=" << j;
        }
}

TEST(HammingScheme, HadamardDiagonalizesBasis) {
    const int d = 4;
    const HammingScheme s = build_scheme(d, 2);
    const Eigen::MatrixXd Q = hadamard_Q(d);
    EXPECT_LE((Q * Q.transpose() - Eigen::MatrixXd::Identity(s.n, s.n)).cwiseAbs().maxCoeff(),
              1e-14);
    for (int i = 0; i <= d; ++i) {
        const Eigen::MatrixXd D = Q.transpose() * basis_matrix(s, i) * Q;
        for (int u = 0; u < s.n; ++u) {
            const int weight = __builtin_popcount(static_cast<unsigned>(u));
            EXPECT_NEAR(D(u, u), s.P(i, weight), 1e-10);
            for (int v = 0; v < s.n; ++v)
                if (u != v) EXPECT_NEAR(D(u, v), 0.0, 1e-10);
        }
    }
}

TEST(HammingScheme, DecomposeRecoversCoefficients) {
    const HammingScheme s = build_scheme(4, 2);
    Eigen::MatrixXd D(s.n, s.n);
    for (int u = 0; u < s.n; ++u)
        for (int v = 0; v < s.n; ++v)
            D(u, v) = __builtin_popcount(static_cast<unsigned>(u ^ v));
    const Eigen::VectorXd a = decompose_in_algebra(s, D);
    for (int i = 0; i <= 4; ++i) EXPECT_NEAR(a(i), i, 1e-14);

    const Eigen::VectorXd aj = decompose_in_algebra(s, Eigen::MatrixXd::Ones(s.n, s.n));
    for (int i = 0; i <= 4; ++i) EXPECT_NEAR(aj(i), 1.0, 1e-14);

    EXPECT_NO_THROW(decompose_in_algebra(s, Eigen::MatrixXd::Zero(s.n, s.n)));
}

TEST(HammingScheme, DecomposeRejectsPerturbation) {
    const HammingScheme s = build_scheme(3, 2);
    Eigen::MatrixXd D(s.n, s.n);
    for (int u = 0; u < s.n; ++u)
        for (int v = 0; v < s.n; ++v)
            D(u, v) = __builtin_popcount(static_cast<unsigned>(u ^ v));
    D(0, 1) += 1e-6;
    D(1, 0) += 1e-6;
    EXPECT_THROW(decompose_in_algebra(s, D), NotInAlgebraError);

    // Perturbations inside the membership tolerance are accepted.
    D(0, 1) -= 1e-6;
    D(1, 0) -= 1e-6;
    D(0, 1) += 1e-13;
    EXPECT_NO_THROW(decompose_in_algebra(s, D));
}

TEST(HammingScheme, InputValidation) {
    EXPECT_THROW(build_scheme(-1, 2), InputError);
    EXPECT_THROW(build_scheme(2, 1), InputError);
    EXPECT_THROW(krawtchouk(3, 2, 4, 0), InputError);
    const HammingScheme s = build_scheme(2, 2);
    EXPECT_THROW(basis_matrix(s, 3), InputError);
    EXPECT_THROW(algebra_coefficients(s, Eigen::MatrixXd::Zero(3, 3)), InputError);
}
