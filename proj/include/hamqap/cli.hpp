#pragma once

// Command line front end. Exit codes: 0 success, 1 numeric failure inside the
// solver, 2 invalid input (bad flags, unreadable files, malformed or
// out-of-scope instances).

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "hamqap/admm.hpp"
#include "hamqap/errors.hpp"
#include "hamqap/io.hpp"
#include "hamqap/oracle.hpp"
#include "hamqap/qap_model.hpp"

namespace hamqap {

namespace detail {

struct SolveOptions {
    std::string file;
    int harper_d = 0;
    int random_d = 0;
    unsigned long long seed = 1;
    AdmmParams params;
    std::string out;
    std::string format = "json";
    bool no_trace_constraint = false;
    bool no_wall_time = false;
};

inline QapInstance load_instance(const std::string& file, int harper_d, int random_d,
                                 unsigned long long seed) {
    const int count = (!file.empty()) + (harper_d > 0) + (random_d > 0);
    if (count != 1)
        throw InputError("exactly one instance source is required: a file, --harper, or --random");
    if (harper_d > 0) return generate_harper(harper_d);
    if (random_d > 0) return generate_hamming_random(random_d, seed);
    return parse_qaplib(read_file(file), std::filesystem::path(file).stem().string());
}

inline int run_solve(const SolveOptions& opt) {
    QapInstance inst = load_instance(opt.file, opt.harper_d, opt.random_d, opt.seed);
    ReducedModel model = build_model(inst);
    AdmmParams params = opt.params;
    params.use_trace_constraint = !opt.no_trace_constraint;
    SolveReport report = solve(model, params);
    if (opt.no_wall_time) report.wall_seconds = 0.0;

    ReportDoc doc = make_report_doc(model, params, report);
    const ReportFormat fmt = opt.format == "csv" ? ReportFormat::Csv : ReportFormat::Json;
    const std::string text = write_report(doc, fmt);
    if (opt.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opt.out, std::ios::binary);
        if (!out) throw InputError("cannot open output file: " + opt.out);
        out << text;
    }
    return 0;
}

inline int run_verify(const std::string& file) {
    QapInstance inst = parse_qaplib(read_file(file), std::filesystem::path(file).stem().string());
    ReducedModel model = build_model(inst);
    std::cout << "instance: " << model.name << "\n";
    std::cout << "n: " << model.n() << "\n";
    std::cout << "d: " << model.d() << "\n";
    std::cout << "q: " << model.scheme.q << "\n";
    std::cout << "swapped: " << (model.swapped ? "true" : "false") << "\n";
    std::cout << "integer_data: " << (model.integer_data ? "true" : "false") << "\n";
    std::cout << "algebra_coefficients:";
    for (int i = 0; i <= model.d(); ++i) std::cout << " " << detail::num(model.a(i));
    std::cout << "\n";
    std::cout << "in_algebra: true\n";
    return 0;
}

inline int run_oracle(const std::string& file) {
    QapInstance inst = parse_qaplib(read_file(file), std::filesystem::path(file).stem().string());
    if (inst.n > 10)
        throw InputError("oracle: exhaustive search is limited to n <= 10, got n = " +
                         std::to_string(inst.n));
    std::vector<int> perm;
    const double opt = oracle::brute_force_qap(inst.A, inst.B, &perm);
    std::cout << "optimum: " << detail::num(opt) << "\n";
    std::cout << "permutation:";
    for (int p : perm) std::cout << " " << p;
    std::cout << "\n";
    return 0;
}

}  // namespace detail

inline int cli_main(int argc, char** argv) {
    CLI::App app{"Certified lower bounds for QAPs with Hamming-scheme structure"};
    app.require_subcommand(1);

    detail::SolveOptions opt;
    CLI::App* solve_cmd =
        app.add_subcommand("solve", "Solve the reduced relaxation and report a lower bound");
    solve_cmd->add_option("file", opt.file, "QAPLIB-format instance file");
    solve_cmd->add_option("--harper", opt.harper_d, "generate the Harper instance on H(d, 2)")
        ->check(CLI::Range(1, 12));
    solve_cmd->add_option("--random", opt.random_d, "generate a random instance on H(d, 2)")
        ->check(CLI::Range(1, 12));
    solve_cmd->add_option("--seed", opt.seed, "seed for --random");
    solve_cmd->add_option("--eps", opt.params.eps, "residual tolerance (default: by size)");
    solve_cmd->add_option("--beta", opt.params.beta, "penalty parameter (default: n / 3)");
    solve_cmd->add_option("--gamma", opt.params.gamma, "dual step scale in (0, (1 + sqrt 5) / 2)");
    solve_cmd->add_option("--max-iter", opt.params.max_iter, "iteration cap");
    solve_cmd->add_flag("--no-trace-constraint", opt.no_trace_constraint,
                        "project block variables onto the PSD cone without the trace equality");
    solve_cmd->add_option("--out", opt.out, "write the report to this path instead of stdout");
    solve_cmd->add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    solve_cmd->add_flag("--no-wall-time", opt.no_wall_time,
                        "report wall_seconds as 0 so identical runs emit identical bytes");

    std::string verify_file;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Check that an instance fits the Hamming-scheme model");
    verify_cmd->add_option("file", verify_file, "QAPLIB-format instance file")->required();

    std::string oracle_file;
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "Exact optimum by exhaustive search (n <= 10)");
    oracle_cmd->add_option("file", oracle_file, "QAPLIB-format instance file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (solve_cmd->parsed()) return detail::run_solve(opt);
        if (verify_cmd->parsed()) return detail::run_verify(verify_file);
        return detail::run_oracle(oracle_file);
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace hamqap
