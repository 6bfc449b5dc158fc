#pragma once

#include <optional>
#include <string>
#include <utility>

#include "celldiv/grid.hpp"
#include "celldiv/regularization.hpp"

namespace celldiv {

enum class Method { brute, filter, qr, mixed };

const char* to_string(Method m);
Method method_from_string(const std::string& s);

struct InverseConfig {
    double alpha = 0.0;
    double b_threshold = 0.01;  // B is reported only where N_eps exceeds this
    std::optional<double> lambda_override;
};

struct InverseResult {
    GridFunction h;  // recovered product B * N
    GridFunction b;  // H / N_eps where N_eps > threshold, NaN elsewhere
    LambdaEstimate lambda_used;
    Method method = Method::brute;
    double alpha = 0.0;
};

// Right-hand side of the filtering strategy: L = dN_alpha + lambda N_eps with
// L_0 = 0, lambda from the filter moment ratio unless overridden.
std::pair<GridFunction, LambdaEstimate> build_l_filter(
    const GridFunction& n_eps, double alpha, std::optional<double> lambda_override = {});

// Brute force: second-order difference derivative, plain moment-ratio lambda,
// and the undamped dyadic recursion.
InverseResult solve_brute(const GridFunction& n_eps, const InverseConfig& cfg);

// Filtering: mollified spectral derivative and the strategy-1 dilation solve.
InverseResult solve_filter(const GridFunction& n_eps, const InverseConfig& cfg);

// Quasi-reversibility: forward-difference data term and the alpha-damped sweep
//   (alpha/dx)(H_i - H_{i-1}) + 4 H_i = H_{i/2} + L_{i/2}.
InverseResult solve_qr(const GridFunction& n_eps, const InverseConfig& cfg);

// Mixed filtering / quasi-reversibility: mollified data and derivative feeding
// the alpha-damped sweep.
InverseResult solve_mixed(const GridFunction& n_eps, const InverseConfig& cfg);

// Pointwise quotient H / N_eps, defined (non-NaN) only where N_eps > threshold.
GridFunction recover_b(const GridFunction& h, const GridFunction& n_eps, double threshold);

// Euclidean re-substitution residual of the alpha-damped sweep; exposed for
// verification.
double sweep_residual(const GridFunction& h, const GridFunction& l, double alpha);

} // namespace celldiv
