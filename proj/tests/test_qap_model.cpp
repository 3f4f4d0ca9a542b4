#include "hamqap/qap_model.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hamqap;

namespace {

Eigen::MatrixXd hamming_matrix(int d) {
    const int n = 1 << d;
    Eigen::MatrixXd A(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            A(u, v) = __builtin_popcount(static_cast<unsigned>(u ^ v));
    return A;
}

Eigen::MatrixXd random_symmetric(int n, unsigned seed, bool integer = false) {
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = integer ? static_cast<double>(rng() % 10)
                                     : static_cast<double>(rng() % 1000) / 250.0 - 2.0;
            B(i, j) = B(j, i) = v;
        }
    return B;
}

QapInstance hamming_instance(int d, unsigned seed, bool integer = false) {
    QapInstance inst;
    inst.n = 1 << d;
    inst.name = "test";
    inst.A = hamming_matrix(d);
    inst.B = random_symmetric(inst.n, seed, integer);
    inst.integer_data = integer;
    return inst;
}

}  // namespace

TEST(QapModel, BuildModelShape) {
    const ReducedModel model = build_model(hamming_instance(4, 11));
    EXPECT_EQ(model.n(), 16);
    EXPECT_EQ(model.d(), 4);
    ASSERT_EQ(model.C.size(), 5u);
    ASSERT_EQ(model.reduction.block_dims.size(), 5u);
    EXPECT_EQ(model.reduction.block_dims[0], 1);
    for (int k = 1; k <= 4; ++k) EXPECT_EQ(model.reduction.block_dims[k], 15);
    EXPECT_DOUBLE_EQ(model.total_budget, 256.0);
    EXPECT_DOUBLE_EQ(model.free_budget, 240.0);
    for (int i = 0; i <= 4; ++i)
        EXPECT_DOUBLE_EQ(model.class_weight(i), 16.0 * model.scheme.mu(i));
    for (int i = 0; i <= 4; ++i) EXPECT_NEAR(model.a(i), i, 1e-12);
}

TEST(QapModel, ObjectiveBlockFormula) {
    // d = 1: P = [[1, 1], [1, -1]], mu = (1, 1), a = (0, 1), so
    // C_0 = B and C_1 = -B.
    QapInstance inst;
    inst.n = 2;
    inst.A = hamming_matrix(1);
    inst.B.resize(2, 2);
    inst.B << 0, 2, 2, 0;
    const ReducedModel model = build_model(inst);
    EXPECT_LE((model.C[0] - inst.B).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE((model.C[1] + inst.B).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(QapModel, ObjectiveMatchesDenseLift) {
    const QapInstance inst = hamming_instance(3, 5);
    const ReducedModel model = build_model(inst);

    // The identity is linear in Y, so arbitrary symmetric blocks suffice.
    BlockVars Y;
    for (int i = 0; i <= 3; ++i) Y.push_back(random_symmetric(8, 100 + i));
    const double via_blocks = objective(model, Y);

    const Eigen::MatrixXd dense = kron(inst.A, inst.B);
    const double via_dense = (dense.array() * lift_blocks(model.scheme, Y).array()).sum();
    EXPECT_NEAR(via_blocks, via_dense, 1e-8 * std::abs(via_dense) + 1e-8);

    double direct = 0.0;
    for (int i = 0; i <= 3; ++i)
        direct += model.a(i) * model.class_weight(i) * (inst.B.array() * Y[i].array()).sum() / 1.0;
    // class_weight(i) = n mu_i = <B_i, B_i>; the direct route multiplies the
    // average entry of B_i-slots, recovered here from symmetry of the blocks.
    EXPECT_NEAR(via_blocks, direct, 1e-8 * std::abs(direct) + 1e-8);
}

TEST(QapModel, RoundTripEigenspaceBlocks) {
    const HammingScheme s = build_scheme(3, 2);
    BlockVars Y;
    for (int i = 0; i <= 3; ++i) Y.push_back(random_symmetric(8, 200 + i));
    const BlockVars M = eigenspace_blocks(s, Y);
    const BlockVars back = blocks_from_eigenspace(s, M);
    for (int i = 0; i <= 3; ++i)
        EXPECT_LE((Y[i] - back[i]).cwiseAbs().maxCoeff(), 1e-12) << "i=" << i;
}

TEST(QapModel, BarycenterRestrictionIsFeasible) {
    for (int d : {2, 3, 4}) {
        const ReducedModel model = build_model(hamming_instance(d, 42 + d));
        const BlockVars Y = barycenter_blocks(model.scheme);
        const auto R = restrict_to_face(model, Y);
        const FeasibilityReport rep = check_feasibility(model, Y, R);
        EXPECT_LE(rep.max(), 1e-9) << "d=" << d;
        // Trace identity along the face: tr(R_j) = P(0, j) * tr(Y_0) = 1.
        for (int j = 0; j <= d; ++j) EXPECT_NEAR(R[j].trace(), 1.0, 1e-12);
    }
}

TEST(QapModel, SwapsWhenSecondMatrixIsStructured) {
    QapInstance inst = hamming_instance(3, 9);
    std::swap(inst.A, inst.B);
    const ReducedModel model = build_model(inst);
    EXPECT_TRUE(model.swapped);
    for (int i = 0; i <= 3; ++i) EXPECT_NEAR(model.a(i), i, 1e-12);

    const BlockVars Y = barycenter_blocks(model.scheme);
    std::swap(inst.A, inst.B);
    const ReducedModel direct = build_model(inst);
    EXPECT_FALSE(direct.swapped);
    EXPECT_NEAR(objective(model, Y), objective(direct, Y), 1e-10);
}

TEST(QapModel, RejectsBadInstances) {
    QapInstance inst = hamming_instance(2, 3);
    inst.A(0, 1) += 0.5;
    inst.A(1, 0) += 0.5;
    EXPECT_THROW(build_model(inst), NotInAlgebraError);

    QapInstance odd;
    odd.n = 6;
    odd.A = Eigen::MatrixXd::Zero(6, 6);
    odd.B = Eigen::MatrixXd::Zero(6, 6);
    EXPECT_THROW(build_model(odd), InputError);

    QapInstance asym = hamming_instance(2, 4);
    asym.B(0, 1) += 1.0;
    EXPECT_THROW(build_model(asym), InputError);
}
