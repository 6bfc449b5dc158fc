#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "celldiv/direct.hpp"
#include "celldiv/grid.hpp"
#include "celldiv/inverse.hpp"
#include "celldiv/metrics.hpp"

namespace celldiv {

// 13 log-spaced regularization weights from 1e-3 to 1 (4 per decade).
std::vector<double> default_alpha_grid();

// Spec string for the smooth benchmark rate 1 + exp(-8 (x - 2)^2).
std::string smooth_bump_spec();

// Everything needed to reproduce one experiment: the rate, the grids, the
// noise/regularization sweeps and the method list. The direct problem runs
// on [0, 2 l_half]; the inverse methods run on [0, l_half] on a grid
// refine_factor times finer.
struct ExperimentPlan {
    std::string b_spec = "const:1";
    double l_half = 4.0;
    std::size_t i_direct = 0;  // interval count; 0 resolves to 1000 noiseless / 100 noisy
    std::size_t refine_factor = 10;
    double theta = 1.0;
    double stop_tol = 1e-10;
    std::vector<double> epsilons = {0.0};
    std::vector<double> alphas;  // empty resolves to default_alpha_grid()
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    std::vector<Method> methods = {Method::brute, Method::filter, Method::qr, Method::mixed};
    bool use_exact_lambda = false;  // additionally rerun everything with the reference lambda0
    double b_threshold = 0.01;
    std::string cache_dir;  // optional on-disk cache for direct solves

    std::size_t direct_intervals() const;
    Grid direct_grid() const;
    Grid fine_grid() const;
    std::vector<double> alpha_grid() const;
};

// Converged direct solve plus the a-posteriori tail check on [l_half, 2 l_half].
struct DirectRun {
    EigenPair eigen;
    GridFunction b;  // rate sampled on the direct grid
    double tail_mass = 0.0;       // dx * sum over nodes with x_i >= l_half
    double tail_max_ratio = 0.0;  // max tail value / max value
    bool tail_ok = false;         // tail_max_ratio <= 1e-6
};

// Solves (or loads from cache) the direct problem for the plan. Results are
// memoized in-process; with plan.cache_dir set they are also stored on disk
// keyed by (b_spec, intervals, domain, theta, stop_tol).
DirectRun run_direct(const ExperimentPlan& plan);

// Reference eigenvalue for the plan's rate: exact for const rates, otherwise
// the direct run's moment ratio.
double lambda0_reference(const ExperimentPlan& plan, const DirectRun& direct);

// Noisy data for one (epsilon, seed): the direct N resampled onto the fine
// grid and perturbed.
GridFunction make_noisy_data(const DirectRun& direct, const Grid& fine, double epsilon,
                             std::uint64_t seed);

// Full sweep over (method, epsilon, alpha, seed), doubled over lambda modes
// when use_exact_lambda is set. Solver failures keep their record slot with
// NaN metrics. Output is deterministically ordered.
std::vector<SweepRecord> run_sweep(const ExperimentPlan& plan);
std::vector<SweepRecord> run_sweep(const ExperimentPlan& plan, const DirectRun& direct);

// Per-method convergence fits of min-over-alpha error against epsilon, one
// per lambda mode present in the records, for both error columns.
struct MethodFit {
    Method method = Method::brute;
    LambdaMode mode = LambdaMode::estimated;
    ConvergenceFit delta_fit;
    ConvergenceFit rel_l2_fit;
};

std::vector<MethodFit> fit_convergence(const std::vector<SweepRecord>& records);

// Sweep-record CSV: header method,epsilon,alpha,seed,delta,delta_rel_l2,
// lambda_used,lambda_abs_err,lambda_mode after optional # comment lines.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records,
                     const std::vector<std::string>& comments = {});
std::vector<SweepRecord> read_sweep_csv(std::istream& is);
void write_sweep_file(const std::string& path, const std::vector<SweepRecord>& records,
                      const std::vector<std::string>& comments = {});
std::vector<SweepRecord> read_sweep_file(const std::string& path);

// Convergence-curve CSV: per-fit slope/intercept comment lines, then rows
// method,lambda_mode,column,epsilon,min_value,argmin_alpha.
void write_convergence_csv(std::ostream& os, const std::vector<MethodFit>& fits,
                           const std::vector<std::string>& comments = {});

} // namespace celldiv
