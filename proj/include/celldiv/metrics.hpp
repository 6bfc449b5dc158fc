#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "celldiv/grid.hpp"
#include "celldiv/inverse.hpp"

namespace celldiv {

// Error functional (sum_i (B_i N_i - H_i)^2 dx) / sqrt(sum_i N_i^2 dx).
// Note the mismatched powers: squared numerator norm over an unsquared
// denominator norm. Kept in this form so results are comparable with the
// published error tables; relative_l2 below is the dimensionally plain
// companion.
double delta_metric(const GridFunction& b_true, const GridFunction& n_eps,
                    const GridFunction& h);

// Plain relative l2 error sqrt(sum (B N - H)^2 dx) / sqrt(sum N^2 dx).
double relative_l2(const GridFunction& b_true, const GridFunction& n_eps,
                   const GridFunction& h);

// Whether the eigenvalue fed to the inverse solve was estimated from the
// data or pinned to the known exact value.
enum class LambdaMode { estimated, exact };

const char* to_string(LambdaMode m);
LambdaMode lambda_mode_from_string(const std::string& s);

// One sweep measurement. A failed solve keeps its slot with NaN metrics so
// record counts stay exhaustive over (method, epsilon, alpha, seed, mode).
struct SweepRecord {
    Method method = Method::brute;
    double epsilon = 0.0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    double delta = 0.0;
    double delta_rel_l2 = 0.0;
    double lambda_used = 0.0;
    double lambda_abs_err = 0.0;
    LambdaMode lambda_mode = LambdaMode::estimated;

    bool failed() const;
};

enum class DeltaColumn { delta, rel_l2 };

struct AlphaOptimum {
    double value = 0.0;  // minimal seed-averaged error
    double alpha = 0.0;  // smallest alpha attaining it
};

// f(eps) and g(eps): select the records at the given epsilon, average the
// chosen error column over seeds per alpha (failed solves are skipped), and
// return the minimum with ties broken toward smaller alpha.
AlphaOptimum min_over_alpha(const std::vector<SweepRecord>& records, double epsilon,
                            DeltaColumn column = DeltaColumn::delta);

struct CurvePoint {
    double epsilon = 0.0;
    double value = 0.0;  // min-over-alpha error at this epsilon
    double alpha = 0.0;  // arg min
};

struct ConvergenceFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<CurvePoint> points;  // sorted by epsilon
};

// Least-squares line through (log eps, log value). Needs >= 3 points, all
// coordinates positive.
ConvergenceFit fit_loglog_slope(std::vector<CurvePoint> points);

} // namespace celldiv
