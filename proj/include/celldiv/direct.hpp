#pragma once

#include <cstddef>

#include "celldiv/grid.hpp"

namespace celldiv {

struct DirectConfig {
    double theta = 1.0;  // CFL ratio dt / dx, in (0, 1]
    double stop_tol = 1e-10;
    std::size_t max_iters = 2'000'000;
};

// Stable size distribution together with the dominant-eigenvalue estimates.
// lambda0 is the moment ratio integrate(N) / integrate_x(N) evaluated on the
// converged N; the per-step growth-factor readings are kept as diagnostics.
struct EigenPair {
    GridFunction n;
    double lambda0 = 0.0;
    double lambda_log = 0.0;     // (1/dt) log(growth factor)
    double lambda_growth = 0.0;  // (growth factor - 1) / dt
    std::size_t iterations = 0;
    double final_residual = 0.0;       // |growth change| / dt at the stop
    double stationary_residual = 0.0;  // l2(dx) residual of the fixed-point system
};

// One step of the upwind transport / implicit division scheme
//   (n_i' - n_i)/dt + (n_i - n_{i-1})/dx + B_i n_i'
//       = B_{2i-1} n_{2i-1} + 2 B_{2i} n_{2i} + B_{2i+1} n_{2i+1}
// with indices beyond the grid treated as zero and n_0' = 0.
GridFunction direct_step(const GridFunction& n, const GridFunction& b, const DirectConfig& cfg);

// Power iteration with per-step renormalization to unit mass. Stops once the
// growth factor has settled (|change|/dt < stop_tol) and the fixed-point
// residual of the stationary system is below 10 * stop_tol.
EigenPair solve_eigenpair(const GridFunction& b, const DirectConfig& cfg);

// Exact stable distribution for constant rate b, the dilation series
//   N(x) = Nbar * sum_n alpha_n exp(-2^{n+1} b x),
//   alpha_0 = 1, alpha_n = -2 alpha_{n-1} / (2^n - 1),
// truncated once |alpha_n| < 1e-16 (or after n_terms terms) and normalized to
// unit mass on g.
GridFunction exact_constant_b(const Grid& g, double b, std::size_t n_terms = 40);

// Relative l1 distance sum|n_i - m_i| / sum|m_i| on a shared grid.
double relative_l1_error(const GridFunction& n, const GridFunction& m);

} // namespace celldiv
