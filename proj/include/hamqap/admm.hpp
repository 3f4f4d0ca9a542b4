#pragma once

// Alternating direction method of multipliers on the facially and symmetry
// reduced doubly nonnegative QAP relaxation. Variables:
//   Y_0..Y_d: algebra blocks, kept in the polyhedral set
//             {Y_0 = I/n, diag(Y_i) = 0, Y_i >= 0, sum_i w_i <J, Y_i> = n^2},
//   R_0..R_d: reduced PSD blocks coupled through
//             sum_i P(i, j) Y_i = V_j R_j V_j^T,
//   Z_0..Z_d: multipliers of the couplings scaled by sqrt(mu_j).
// Both subproblems are closed-form projections: a weighted simplex projection
// for Y (the coupling operator T satisfies T T^* = Diag(w)) and one PSD
// projection per eigenspace for R. Every iterate's multiplier yields a valid
// lower bound on the relaxation value, reported alongside the objective.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hamqap/errors.hpp"
#include "hamqap/facial_reduction.hpp"
#include "hamqap/projections.hpp"
#include "hamqap/qap_model.hpp"

namespace hamqap {

enum class Termination { ResidualTol, Stagnation, MaxIter };

inline const char* to_string(Termination t) {
    switch (t) {
        case Termination::ResidualTol: return "ResidualTol";
        case Termination::Stagnation: return "Stagnation";
        case Termination::MaxIter: return "MaxIter";
    }
    return "Unknown";
}

struct AdmmParams {
    double beta = 0.0;            // penalty; <= 0 selects the default n / 3
    double gamma = 1.618;         // dual step length, in (0, (1 + sqrt 5) / 2)
    double eps = 0.0;             // residual tolerance; <= 0 selects the default by n
    long max_iter = 200000;
    int bound_period = 100;       // residual/bound checks every this many iterations
    int stagnation_window = 20;   // consecutive small-gap checks before stopping
    bool use_trace_constraint = true;  // R-subproblem on the fixed-trace PSD slice
    unsigned long long seed = 0;  // reserved; the method is deterministic
};

struct SolveReport {
    double obj = 0.0;             // objective at termination
    double lb = 0.0;              // best dual lower bound seen at any check
    bool has_lb_ceil = false;     // true when instance data is integral
    long long lb_ceil = 0;        // ceil(lb), valid for integer instances
    double pres = 0.0;            // sum_j ||sum_i P(i,j) Y_i - V_j R_j V_j^T||_F
    double dres = 0.0;            // ||Z_new - Z_old||_F over all blocks
    double res = 0.0;             // max(pres, dres)
    long iters = 0;
    double wall_seconds = 0.0;
    Termination termination = Termination::MaxIter;
};

struct IterateState {
    BlockVars Y;
    std::vector<Eigen::MatrixXd> R;
    std::vector<Eigen::MatrixXd> Z;
};

inline double default_eps(int n) { return n <= 128 ? 1e-12 : 1e-5; }

inline double max_gamma() { return 0.5 * (1.0 + std::sqrt(5.0)); }

/// Barycenter start: Y at the barycenter, R its face restriction, Z = 0.
inline IterateState initial_state(const ReducedModel& model) {
    IterateState s;
    s.Y = barycenter_blocks(model.scheme);
    s.R = restrict_to_face(model, s.Y);
    s.Z.assign(model.d() + 1, Eigen::MatrixXd::Zero(model.n(), model.n()));
    return s;
}

/// Y-subproblem: weighted simplex projection of the adjoint-transformed
/// targets sqrt(mu_j) V_j R_j V_j^T - (C_j + Z_j) / beta over the free
/// off-diagonal coordinates; the fixed coordinates are pinned.
inline void y_update(const ReducedModel& model, IterateState& state, double beta) {
    const int d = model.d();
    const int n = model.n();
    const HammingScheme& s = model.scheme;

    BlockVars targets(d + 1);
    for (int j = 0; j <= d; ++j) {
        const Eigen::MatrixXd& V = model.reduction.V(j);
        targets[j] = std::sqrt(s.mu(j)) * (V * state.R[j] * V.transpose()) -
                     (model.C[j] + state.Z[j]) / beta;
    }
    BlockVars data(d + 1);
    for (int i = 0; i <= d; ++i) {
        data[i] = Eigen::MatrixXd::Zero(n, n);
        for (int j = 0; j <= d; ++j) data[i] += std::sqrt(s.mu(j)) * s.P(i, j) * targets[j];
    }

    state.Y[0] = Eigen::MatrixXd::Identity(n, n) / n;
    const int free_per_class = n * (n - 1);
    Eigen::VectorXd y(d * free_per_class), w(d * free_per_class);
    int k = 0;
    for (int i = 1; i <= d; ++i)
        for (int sidx = 0; sidx < n; ++sidx)
            for (int t = 0; t < n; ++t) {
                if (sidx == t) continue;
                y(k) = data[i](sidx, t);
                w(k) = model.class_weight(i);
                ++k;
            }
    const Eigen::VectorXd x = project_weighted_simplex(y, w, model.free_budget);
    k = 0;
    for (int i = 1; i <= d; ++i) {
        state.Y[i].resize(n, n);
        for (int sidx = 0; sidx < n; ++sidx)
            for (int t = 0; t < n; ++t)
                state.Y[i](sidx, t) = (sidx == t) ? 0.0 : x(k++);
    }
}

/// R-subproblem: project V_j^T (sum_i P(i,j) Y_i + Z_j / (beta sqrt(mu_j))) V_j
/// onto the PSD cone, intersected with the trace-P(0,j) slice when enabled.
/// The trace value is the one implied by the coupling and the fixed blocks:
/// tr(R_j) = P(0, j) * tr(Y_0) = 1.
inline void r_update(const ReducedModel& model, IterateState& state, double beta,
                     bool use_trace_constraint) {
    const HammingScheme& s = model.scheme;
    const BlockVars M = eigenspace_blocks(s, state.Y);
    for (int j = 0; j <= model.d(); ++j) {
        const Eigen::MatrixXd& V = model.reduction.V(j);
        const Eigen::MatrixXd S =
            V.transpose() * (M[j] + state.Z[j] / (beta * std::sqrt(s.mu(j)))) * V;
        state.R[j] = use_trace_constraint ? project_psd_trace(S, s.P(0, j)) : project_psd(S);
    }
}

/// Multiplier ascent Z_j += gamma * beta * sqrt(mu_j) * coupling residual.
/// Returns the unscaled primal residual (sum of coupling norms) and the dual
/// residual ||Z_new - Z_old||_F, both for the state just produced.
inline std::pair<double, double> z_update(const ReducedModel& model, IterateState& state,
                                          double beta, double gamma) {
    const HammingScheme& s = model.scheme;
    double pres = 0.0, dres_sq = 0.0;
    const BlockVars M = eigenspace_blocks(s, state.Y);
    for (int j = 0; j <= model.d(); ++j) {
        const Eigen::MatrixXd& V = model.reduction.V(j);
        const Eigen::MatrixXd resid = M[j] - V * state.R[j] * V.transpose();
        const double norm = resid.norm();
        pres += norm;
        const double step = gamma * beta * std::sqrt(s.mu(j));
        state.Z[j] += step * resid;
        dres_sq += step * step * norm * norm;
    }
    return {pres, std::sqrt(dres_sq)};
}

/// Valid lower bound on the relaxation value from any multiplier:
///   g(Z) = min_{Y in P} sum_j <C_j + Z_j, sqrt(mu_j) sum_i P(i,j) Y_i>
///          - sum_j sqrt(mu_j) P(0, j) lambda_max(V_j^T Z_j V_j).
/// The inner minimum is closed-form: the fixed coordinates contribute
/// tr(M_0)/n and the free budget goes to the cheapest weighted coordinate.
inline double dual_lower_bound(const ReducedModel& model,
                               const std::vector<Eigen::MatrixXd>& Z) {
    const int d = model.d();
    const int n = model.n();
    const HammingScheme& s = model.scheme;

    BlockVars M(d + 1);
    for (int i = 0; i <= d; ++i) {
        M[i] = Eigen::MatrixXd::Zero(n, n);
        for (int j = 0; j <= d; ++j)
            M[i] += std::sqrt(s.mu(j)) * s.P(i, j) * (model.C[j] + Z[j]);
    }
    double value = M[0].trace() / n;

    double cheapest = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= d; ++i) {
        double min_offdiag = std::numeric_limits<double>::infinity();
        for (int sidx = 0; sidx < n; ++sidx)
            for (int t = 0; t < n; ++t)
                if (sidx != t) min_offdiag = std::min(min_offdiag, M[i](sidx, t));
        cheapest = std::min(cheapest, min_offdiag / model.class_weight(i));
    }
    value += model.free_budget * cheapest;

    for (int j = 0; j <= d; ++j) {
        const Eigen::MatrixXd& V = model.reduction.V(j);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
            (V.transpose() * Z[j] * V).eval(), Eigen::EigenvaluesOnly);
        value -= std::sqrt(s.mu(j)) * s.P(0, j) * eig.eigenvalues().maxCoeff();
    }
    return value;
}

/// Algebra blocks of the PSD-side iterate: the unique Y with
/// sum_i P(i, j) Y_i = V_j R_j V_j^T for every eigenspace.
inline BlockVars lift_solution(const ReducedModel& model,
                               const std::vector<Eigen::MatrixXd>& R) {
    BlockVars M(model.d() + 1);
    for (int j = 0; j <= model.d(); ++j) {
        const Eigen::MatrixXd& V = model.reduction.V(j);
        M[j] = V * R[j] * V.transpose();
    }
    return blocks_from_eigenspace(model.scheme, M);
}

inline void validate(const AdmmParams& params) {
    if (params.gamma <= 0.0 || params.gamma >= max_gamma())
        throw InputError("AdmmParams: gamma must lie in (0, (1 + sqrt 5) / 2)");
    if (params.max_iter < 1) throw InputError("AdmmParams: max_iter must be positive");
    if (params.bound_period < 1) throw InputError("AdmmParams: bound_period must be positive");
    if (params.stagnation_window < 1)
        throw InputError("AdmmParams: stagnation_window must be positive");
}

inline SolveReport solve(const ReducedModel& model, const AdmmParams& params = AdmmParams(),
                         IterateState* state_out = nullptr) {
    validate(params);
    const double beta = params.beta > 0.0 ? params.beta : model.n() / 3.0;
    const double eps = params.eps > 0.0 ? params.eps : default_eps(model.n());

    const auto t0 = std::chrono::steady_clock::now();
    IterateState state = initial_state(model);

    SolveReport report;
    report.termination = Termination::MaxIter;
    double best_lb = -std::numeric_limits<double>::infinity();
    int small_gap_checks = 0;
    long iter = 0;
    double pres = 0.0, dres = 0.0;

    auto evaluate = [&](long at_iter) {
        report.obj = objective(model, state.Y);
        const double bound = dual_lower_bound(model, state.Z);
        if (!std::isfinite(report.obj) || !std::isfinite(bound) || !std::isfinite(pres) ||
            !std::isfinite(dres))
            throw NumericError("solve: non-finite iterate at iteration " +
                               std::to_string(at_iter));
        best_lb = std::max(best_lb, bound);
        report.lb = best_lb;
        report.pres = pres;
        report.dres = dres;
        report.res = std::max(pres, dres);
        report.iters = at_iter;
        return bound;
    };

    while (iter < params.max_iter) {
        ++iter;
        y_update(model, state, beta);
        r_update(model, state, beta, params.use_trace_constraint);
        std::tie(pres, dres) = z_update(model, state, beta, params.gamma);

        if (iter % params.bound_period == 0) {
            const double bound = evaluate(iter);
            if (pres < eps && dres <= eps) {
                report.termination = Termination::ResidualTol;
                break;
            }
            const double gap = (report.obj - bound) / (1.0 + report.obj + bound);
            small_gap_checks = std::abs(gap) < 1e-4 ? small_gap_checks + 1 : 0;
            if (small_gap_checks >= params.stagnation_window) {
                report.termination = Termination::Stagnation;
                break;
            }
        }
    }
    if (report.iters != iter) evaluate(iter);

    if (model.integer_data) {
        report.has_lb_ceil = true;
        // Guard against rounding an exactly attained integer bound upward.
        report.lb_ceil = static_cast<long long>(std::ceil(report.lb - 1e-9));
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (state_out) *state_out = std::move(state);
    return report;
}

}  // namespace hamqap
