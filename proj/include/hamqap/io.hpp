#pragma once

// Instance ingestion and machine-readable reporting. QAPLIB .dat layout:
// n, then A row-major, then B row-major, whitespace separated; trailing
// content after the 1 + 2n^2 numbers is ignored. Reports are emitted by hand
// so that identical inputs produce identical bytes.

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "hamqap/admm.hpp"
#include "hamqap/errors.hpp"
#include "hamqap/qap_model.hpp"

namespace hamqap {

inline constexpr int kParseMaxN = 4096;

namespace detail {

inline bool is_integral_value(double v) {
    return std::isfinite(v) && v == std::floor(v) && std::abs(v) <= 9.007199254740992e15;
}

inline void require_symmetric(const Eigen::MatrixXd& M, const char* label) {
    const double tol = 1e-10 * std::max(1.0, M.cwiseAbs().maxCoeff());
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > tol)
        throw InputError(std::string("parse_qaplib: matrix ") + label + " is not symmetric");
}

}  // namespace detail

/// Parses the canonical QAPLIB .dat layout; validates shape and symmetry.
/// Algebra membership is checked later by build_model.
inline QapInstance parse_qaplib(const std::string& text, const std::string& name = "instance") {
    std::istringstream in(text);
    double first = 0.0;
    if (!(in >> first) || !detail::is_integral_value(first) || first < 1 || first > kParseMaxN)
        throw InputError("parse_qaplib: expected a leading positive size, got invalid input");
    const int n = static_cast<int>(first);

    QapInstance inst;
    inst.name = name;
    inst.n = n;
    inst.A.resize(n, n);
    inst.B.resize(n, n);
    inst.integer_data = true;
    for (int m = 0; m < 2; ++m) {
        Eigen::MatrixXd& M = m == 0 ? inst.A : inst.B;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                double v = 0.0;
                if (!(in >> v))
                    throw InputError("parse_qaplib: expected " + std::to_string(2 * n * n) +
                                     " matrix entries after the size, input ended early");
                M(r, c) = v;
                inst.integer_data = inst.integer_data && detail::is_integral_value(v);
            }
    }
    detail::require_symmetric(inst.A, "A");
    detail::require_symmetric(inst.B, "B");
    return inst;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Harper instance on H(d,2): A = Hamming distances, B_{ij} = |i - j|.
inline QapInstance generate_harper(int d) {
    if (d < 1 || d > 12) throw InputError("generate_harper: d must be in [1, 12]");
    const int n = 1 << d;
    QapInstance inst;
    inst.name = "Harper_" + std::to_string(n);
    inst.n = n;
    inst.A.resize(n, n);
    inst.B.resize(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            inst.A(u, v) = __builtin_popcount(static_cast<unsigned>(u ^ v));
            inst.B(u, v) = std::abs(u - v);
        }
    inst.integer_data = true;
    return inst;
}

/// Random instance on H(d,2): symmetric integer B with entries in [0, 10),
/// reproducible for a fixed seed.
inline QapInstance generate_hamming_random(int d, unsigned long long seed) {
    if (d < 1 || d > 12) throw InputError("generate_hamming_random: d must be in [1, 12]");
    const int n = 1 << d;
    QapInstance inst;
    inst.name = "rand_" + std::to_string(n) + "_s" + std::to_string(seed);
    inst.n = n;
    inst.A.resize(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            inst.A(u, v) = __builtin_popcount(static_cast<unsigned>(u ^ v));
    std::mt19937_64 gen(seed);
    inst.B = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = static_cast<double>(gen() % 10);
            inst.B(i, j) = inst.B(j, i) = v;
        }
    inst.integer_data = true;
    return inst;
}

enum class ReportFormat { Json, Csv };

/// Everything a report row needs: instance identity, solve outcome, and the
/// resolved parameter values the run actually used.
struct ReportDoc {
    std::string instance;
    int n = 0;
    int d = 0;
    int q = 2;
    SolveReport report;
    double beta = 0.0;
    double gamma = 0.0;
    double eps = 0.0;
    long max_iter = 0;
    int bound_period = 0;
    int stagnation_window = 0;
    bool use_trace_constraint = true;
};

inline ReportDoc make_report_doc(const ReducedModel& model, const AdmmParams& params,
                                 const SolveReport& report) {
    ReportDoc doc;
    doc.instance = model.name;
    doc.n = model.n();
    doc.d = model.d();
    doc.q = model.scheme.q;
    doc.report = report;
    doc.beta = params.beta > 0.0 ? params.beta : model.n() / 3.0;
    doc.gamma = params.gamma;
    doc.eps = params.eps > 0.0 ? params.eps : default_eps(model.n());
    doc.max_iter = params.max_iter;
    doc.bound_period = params.bound_period;
    doc.stagnation_window = params.stagnation_window;
    doc.use_trace_constraint = params.use_trace_constraint;
    return doc;
}

namespace detail {

inline std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace detail

/// Fixed key order; numbers at 10 significant digits; lb_ceil is null unless
/// the instance data is integral.
inline std::string write_report_json(const ReportDoc& doc) {
    using detail::num;
    std::string s = "{\n";
    s += "  \"instance\": \"" + detail::json_escape(doc.instance) + "\",\n";
    s += "  \"n\": " + std::to_string(doc.n) + ",\n";
    s += "  \"d\": " + std::to_string(doc.d) + ",\n";
    s += "  \"q\": " + std::to_string(doc.q) + ",\n";
    s += "  \"obj\": " + num(doc.report.obj) + ",\n";
    s += "  \"lb\": " + num(doc.report.lb) + ",\n";
    s += "  \"lb_ceil\": " +
         (doc.report.has_lb_ceil ? std::to_string(doc.report.lb_ceil) : std::string("null")) +
         ",\n";
    s += "  \"pres\": " + num(doc.report.pres) + ",\n";
    s += "  \"dres\": " + num(doc.report.dres) + ",\n";
    s += "  \"res\": " + num(doc.report.res) + ",\n";
    s += "  \"iters\": " + std::to_string(doc.report.iters) + ",\n";
    s += "  \"wall_seconds\": " + num(doc.report.wall_seconds) + ",\n";
    s += "  \"termination\": \"" + std::string(to_string(doc.report.termination)) + "\",\n";
    s += "  \"params\": {\n";
    s += "    \"beta\": " + num(doc.beta) + ",\n";
    s += "    \"gamma\": " + num(doc.gamma) + ",\n";
    s += "    \"eps\": " + num(doc.eps) + ",\n";
    s += "    \"max_iter\": " + std::to_string(doc.max_iter) + ",\n";
    s += "    \"bound_period\": " + std::to_string(doc.bound_period) + ",\n";
    s += "    \"stagnation_window\": " + std::to_string(doc.stagnation_window) + ",\n";
    s += "    \"use_trace_constraint\": " +
         std::string(doc.use_trace_constraint ? "true" : "false") + "\n";
    s += "  }\n";
    s += "}\n";
    return s;
}

inline const char* csv_header() {
    return "instance,n,d,q,obj,lb,lb_ceil,pres,dres,res,iters,wall_seconds,termination,"
           "beta,gamma,eps,max_iter,bound_period,stagnation_window,use_trace_constraint";
}

inline std::string write_report_csv(const ReportDoc& doc) {
    using detail::num;
    std::string s = csv_header();
    s += "\n";
    s += doc.instance + "," + std::to_string(doc.n) + "," + std::to_string(doc.d) + "," +
         std::to_string(doc.q) + ",";
    s += num(doc.report.obj) + "," + num(doc.report.lb) + ",";
    s += (doc.report.has_lb_ceil ? std::to_string(doc.report.lb_ceil) : std::string()) + ",";
    s += num(doc.report.pres) + "," + num(doc.report.dres) + "," + num(doc.report.res) + ",";
    s += std::to_string(doc.report.iters) + "," + num(doc.report.wall_seconds) + ",";
    s += std::string(to_string(doc.report.termination)) + ",";
    s += num(doc.beta) + "," + num(doc.gamma) + "," + num(doc.eps) + ",";
    s += std::to_string(doc.max_iter) + "," + std::to_string(doc.bound_period) + "," +
         std::to_string(doc.stagnation_window) + ",";
    s += doc.use_trace_constraint ? "true" : "false";
    s += "\n";
    return s;
}

inline std::string write_report(const ReportDoc& doc, ReportFormat format) {
    return format == ReportFormat::Json ? write_report_json(doc) : write_report_csv(doc);
}

}  // namespace hamqap
