#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "celldiv/csv.hpp"
#include "celldiv/errors.hpp"
#include "celldiv/experiments.hpp"
#include "celldiv/inverse.hpp"
#include "celldiv/metrics.hpp"
#include "celldiv/noise.hpp"
#include "celldiv/rates.hpp"

namespace {

using namespace celldiv;

struct DirectArgs {
    std::string b_spec = "const:1";
    std::size_t points = 1000;
    double domain = 8.0;
    double theta = 1.0;
    double tol = 1e-10;
    std::string out;
    std::string cache_dir;
};

struct InverseArgs {
    std::string method = "filter";
    double alpha = 0.01;
    double eps = 0.0;
    std::uint64_t seed = 1;
    bool exact_lambda = false;
    std::optional<double> lambda0;
    std::string n_source = "auto";
    std::string b_spec = "const:1";
    std::size_t points = 0;
    double b_threshold = 0.01;
    std::string out;
    std::string cache_dir;
};

struct SweepArgs {
    std::string b_spec = "const:1";
    std::vector<double> alphas;
    std::vector<double> epsilons = {0.0};
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    std::vector<std::string> methods = {"brute", "filter", "qr", "mixed"};
    bool exact_lambda = false;
    std::size_t points = 0;
    std::string out;
    std::string cache_dir;
};

struct ConvergenceArgs {
    std::string from;
    std::string out;
};

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("cannot open for writing: " + path);
    return os;
}

ExperimentPlan base_plan(const std::string& b_spec, std::size_t points, double eps,
                         const std::string& cache_dir) {
    ExperimentPlan plan;
    plan.b_spec = b_spec;
    plan.i_direct = points;
    plan.epsilons = {eps};
    plan.cache_dir = cache_dir;
    return plan;
}

int run_direct_cmd(const DirectArgs& a) {
    ExperimentPlan plan;
    plan.b_spec = a.b_spec;
    plan.l_half = a.domain / 2.0;
    plan.i_direct = a.points;
    plan.theta = a.theta;
    plan.stop_tol = a.tol;
    plan.cache_dir = a.cache_dir;

    const DirectRun run = run_direct(plan);
    if (!run.tail_ok)
        std::cerr << "warning: tail is not negligible beyond x = " << format_double(plan.l_half)
                  << " (max ratio " << format_double(run.tail_max_ratio)
                  << "); enlarge --domain\n";

    std::vector<std::string> comments = {
        "b=" + a.b_spec,
        "points=" + std::to_string(plan.direct_intervals()),
        "domain=" + format_double(a.domain),
        "theta=" + format_double(a.theta),
        "tol=" + format_double(a.tol),
        "lambda0=" + format_double(run.eigen.lambda0),
        "lambda_log=" + format_double(run.eigen.lambda_log),
        "lambda_growth=" + format_double(run.eigen.lambda_growth),
        "iterations=" + std::to_string(run.eigen.iterations),
        "final_residual=" + format_double(run.eigen.final_residual),
        "stationary_residual=" + format_double(run.eigen.stationary_residual),
        "tail_mass=" + format_double(run.tail_mass),
        "tail_max_ratio=" + format_double(run.tail_max_ratio),
    };
    if (!a.out.empty()) {
        auto os = open_out(a.out);
        write_grid_function_csv(os, run.eigen.n, comments);
    }
    std::cout << "lambda0=" << format_double(run.eigen.lambda0) << '\n'
              << "iterations=" << run.eigen.iterations << '\n'
              << "tail_mass=" << format_double(run.tail_mass) << '\n';
    return 0;
}

void write_inverse_csv(std::ostream& os, const InverseResult& res, const GridFunction& n_eps,
                       const std::vector<std::string>& comments) {
    for (const std::string& c : comments) os << "# " << c << '\n';
    os << "x,N_eps,H,B\n";
    const Grid& g = res.h.grid;
    for (std::size_t i = 0; i < res.h.size(); ++i) {
        os << format_double(g.node(i)) << ',' << format_double(n_eps.values[i]) << ','
           << format_double(res.h.values[i]) << ',';
        if (std::isfinite(res.b.values[i])) os << format_double(res.b.values[i]);
        os << '\n';
    }
}

int run_inverse_cmd(const InverseArgs& a) {
    const Method method = method_from_string(a.method);

    GridFunction n_eps;
    std::optional<double> lambda_ref = a.lambda0;
    std::vector<std::string> comments;
    if (a.n_source == "auto") {
        ExperimentPlan plan = base_plan(a.b_spec, a.points, a.eps, a.cache_dir);
        const DirectRun direct = run_direct(plan);
        if (!direct.tail_ok)
            std::cerr << "warning: direct tail is not negligible; results on [0, "
                      << format_double(plan.l_half) << "] are degraded\n";
        n_eps = make_noisy_data(direct, plan.fine_grid(), a.eps, a.seed);
        if (!lambda_ref) lambda_ref = lambda0_reference(plan, direct);
        comments.push_back("b=" + a.b_spec);
    } else {
        n_eps = perturb(read_grid_function_file(a.n_source), NoiseSpec{a.eps, a.seed});
        comments.push_back("n=" + a.n_source);
    }

    InverseConfig cfg;
    cfg.alpha = a.alpha;
    cfg.b_threshold = a.b_threshold;
    if (a.exact_lambda) {
        if (!lambda_ref)
            throw std::invalid_argument(
                "--exact-lambda with --n <csv> needs --lambda0 <value>");
        cfg.lambda_override = *lambda_ref;
    }

    const InverseResult res = [&] {
        switch (method) {
            case Method::brute: return solve_brute(n_eps, cfg);
            case Method::filter: return solve_filter(n_eps, cfg);
            case Method::qr: return solve_qr(n_eps, cfg);
            case Method::mixed: return solve_mixed(n_eps, cfg);
        }
        throw std::invalid_argument("unknown method");
    }();

    comments.push_back("method=" + std::string(to_string(res.method)));
    comments.push_back("alpha=" + format_double(a.alpha));
    comments.push_back("eps=" + format_double(a.eps));
    comments.push_back("seed=" + std::to_string(a.seed));
    comments.push_back("lambda=" + format_double(res.lambda_used.value));
    comments.push_back("lambda_variant=" + std::string(to_string(res.lambda_used.variant)));
    if (a.exact_lambda) comments.push_back("lambda_override=" + format_double(*cfg.lambda_override));

    if (a.n_source == "auto") {
        const GridFunction b_true = parse_rate(a.b_spec).sample(n_eps.grid);
        comments.push_back("delta=" + format_double(delta_metric(b_true, n_eps, res.h)));
        comments.push_back("delta_rel_l2=" + format_double(relative_l2(b_true, n_eps, res.h)));
    }

    if (!a.out.empty()) {
        auto os = open_out(a.out);
        write_inverse_csv(os, res, n_eps, comments);
    }
    std::cout << "lambda=" << format_double(res.lambda_used.value) << '\n';
    for (const std::string& c : comments)
        if (c.rfind("delta", 0) == 0) std::cout << c << '\n';
    return 0;
}

int run_sweep_cmd(const SweepArgs& a) {
    ExperimentPlan plan;
    plan.b_spec = a.b_spec;
    plan.i_direct = a.points;
    plan.epsilons = a.epsilons;
    plan.alphas = a.alphas;
    plan.seeds = a.seeds;
    plan.use_exact_lambda = a.exact_lambda;
    plan.cache_dir = a.cache_dir;
    plan.methods.clear();
    for (const std::string& m : a.methods) plan.methods.push_back(method_from_string(m));

    const std::vector<SweepRecord> records = run_sweep(plan);

    std::vector<std::string> comments = {
        "b=" + a.b_spec,
        "points=" + std::to_string(plan.direct_intervals()),
        "refine=" + std::to_string(plan.refine_factor),
        "exact_lambda=" + std::string(a.exact_lambda ? "1" : "0"),
    };
    if (!a.out.empty()) {
        write_sweep_file(a.out, records, comments);
    } else {
        write_sweep_csv(std::cout, records, comments);
    }
    std::cerr << records.size() << " records\n";
    return 0;
}

int run_convergence_cmd(const ConvergenceArgs& a) {
    const std::vector<SweepRecord> records = read_sweep_file(a.from);
    const std::vector<MethodFit> fits = fit_convergence(records);

    const std::vector<std::string> comments = {"from=" + a.from};
    if (!a.out.empty()) {
        auto os = open_out(a.out);
        write_convergence_csv(os, fits, comments);
    } else {
        write_convergence_csv(std::cout, fits, comments);
    }
    for (const MethodFit& f : fits)
        std::cout << "method=" << to_string(f.method) << " lambda_mode=" << to_string(f.mode)
                  << " slope_delta=" << format_double(f.delta_fit.slope)
                  << " slope_rel_l2=" << format_double(f.rel_l2_fit.slope) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cell-division eigenproblem solver and division-rate recovery"};
    app.require_subcommand(1);

    DirectArgs da;
    CLI::App* direct = app.add_subcommand("direct", "Solve the direct eigenproblem");
    direct->add_option("--b", da.b_spec, "Division rate spec (const:v, jump:v1:v2[:xj], gauss-bump:b:a:c:w, file:path)");
    direct->add_option("--points", da.points, "Grid intervals I (I+1 nodes)");
    direct->add_option("--domain", da.domain, "Domain length (solves on [0, domain])");
    direct->add_option("--theta", da.theta, "CFL ratio dt/dx in (0, 1]");
    direct->add_option("--tol", da.tol, "Growth-factor stopping tolerance");
    direct->add_option("--out", da.out, "Output CSV for N");
    direct->add_option("--cache-dir", da.cache_dir, "Directory for cached direct solves");

    InverseArgs ia;
    CLI::App* inverse = app.add_subcommand("inverse", "Recover B N and B from data");
    inverse->add_option("--method", ia.method, "brute, filter, qr or mixed");
    inverse->add_option("--alpha", ia.alpha, "Regularization weight");
    inverse->add_option("--eps", ia.eps, "Noise level");
    inverse->add_option("--seed", ia.seed, "Noise seed");
    inverse->add_flag("--exact-lambda", ia.exact_lambda, "Use the reference eigenvalue instead of estimating it");
    inverse->add_option("--lambda0", ia.lambda0, "Reference eigenvalue for --exact-lambda with file data");
    inverse->add_option("--n", ia.n_source, "Data source: 'auto' (run the direct solver) or a CSV path");
    inverse->add_option("--b", ia.b_spec, "Division rate spec for auto mode");
    inverse->add_option("--points", ia.points, "Direct grid intervals for auto mode (0 = by noise level)");
    inverse->add_option("--b-threshold", ia.b_threshold, "Report B only where N exceeds this");
    inverse->add_option("--out", ia.out, "Output CSV (x,N_eps,H,B)");
    inverse->add_option("--cache-dir", ia.cache_dir, "Directory for cached direct solves");

    SweepArgs sa;
    CLI::App* sweep = app.add_subcommand("sweep", "Error sweep over methods, noise and alpha");
    sweep->add_option("--b", sa.b_spec, "Division rate spec");
    sweep->add_option("--alphas", sa.alphas, "Alpha list (default: 13 log-spaced in [1e-3, 1])")->delimiter(',');
    sweep->add_option("--epsilons", sa.epsilons, "Noise levels")->delimiter(',');
    sweep->add_option("--seeds", sa.seeds, "Noise seeds")->delimiter(',');
    sweep->add_option("--methods", sa.methods, "Method subset")->delimiter(',');
    sweep->add_flag("--exact-lambda", sa.exact_lambda, "Also run every solve with the reference eigenvalue");
    sweep->add_option("--points", sa.points, "Direct grid intervals (0 = by noise level)");
    sweep->add_option("--out", sa.out, "Output CSV (stdout if omitted)");
    sweep->add_option("--cache-dir", sa.cache_dir, "Directory for cached direct solves");

    ConvergenceArgs ca;
    CLI::App* conv = app.add_subcommand("convergence", "Fit min-error convergence from a sweep CSV");
    conv->add_option("--from", ca.from, "Sweep CSV produced by the sweep subcommand")->required();
    conv->add_option("--out", ca.out, "Output CSV (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*direct) return run_direct_cmd(da);
        if (*inverse) return run_inverse_cmd(ia);
        if (*sweep) return run_sweep_cmd(sa);
        if (*conv) return run_convergence_cmd(ca);
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
