#include "celldiv/direct.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "celldiv/errors.hpp"

namespace celldiv {

namespace {

void check_inputs(const GridFunction& n, const GridFunction& b, const DirectConfig& cfg) {
    if (!(n.grid == b.grid))
        throw std::invalid_argument("direct scheme: n and B live on different grids");
    if (!(cfg.theta > 0.0) || cfg.theta > 1.0)
        throw std::invalid_argument("direct scheme: theta must lie in (0, 1]");
    for (double v : b.values)
        if (v < 0.0 || !std::isfinite(v))
            throw std::invalid_argument("direct scheme: B must be nonnegative and finite");
}

} // namespace

GridFunction direct_step(const GridFunction& n, const GridFunction& b, const DirectConfig& cfg) {
    check_inputs(n, b, cfg);
    if (n.values[0] != 0.0)
        throw std::invalid_argument("direct_step: n must vanish at x = 0");

    const std::size_t last = n.grid.last_index();
    const double dx = n.grid.dx();
    const double dt = cfg.theta * dx;
    const double inv_dt = 1.0 / dt;
    const double inv_dx = 1.0 / dx;
    // With theta = 1 this factor is exactly zero and transport is a pure shift.
    const double carry = inv_dt - inv_dx;

    GridFunction out(n.grid);
    for (std::size_t i = 1; i <= last; ++i) {
        double rhs = 0.0;
        const std::size_t j = 2 * i;
        if (j - 1 <= last) rhs += b.values[j - 1] * n.values[j - 1];
        if (j <= last) rhs += 2.0 * b.values[j] * n.values[j];
        if (j + 1 <= last) rhs += b.values[j + 1] * n.values[j + 1];
        const double num = n.values[i] * carry + n.values[i - 1] * inv_dx + rhs;
        out.values[i] = num / (inv_dt + b.values[i]);
    }
    out.values[0] = 0.0;
    return out;
}

EigenPair solve_eigenpair(const GridFunction& b, const DirectConfig& cfg) {
    GridFunction probe(b.grid);
    check_inputs(probe, b, cfg);

    double b_max = 0.0;
    for (double v : b.values) b_max = std::max(b_max, v);
    if (b_max == 0.0)
        throw SolverError("solve_eigenpair: division rate vanishes identically; "
                          "the iteration has no positive eigenpair");

    const Grid& g = b.grid;
    const double dx = g.dx();
    const double dt = cfg.theta * dx;

    GridFunction n(g);
    for (std::size_t i = 0; i < g.n_points; ++i) {
        const double x = g.node(i);
        n.values[i] = x * std::exp(-x);
    }
    const double m0 = integrate(n);
    for (auto& v : n.values) v /= m0;

    double prev_growth = std::numeric_limits<double>::quiet_NaN();
    double last_residual = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
        GridFunction stepped = direct_step(n, b, cfg);
        const double growth = integrate(stepped);  // previous iterate has unit mass
        if (!(growth > 0.0) || !std::isfinite(growth))
            throw SolverError("solve_eigenpair: mass vanished or diverged; "
                              "iteration cannot converge", growth, k);

        const double residual = std::abs(growth - prev_growth) / dt;
        last_residual = residual;
        if (residual < cfg.stop_tol) {
            // Fixed-point residual of the stationary system, written through
            // the step operator: R_i = (growth n_i - stepped_i)(1/dt + B_i).
            double sq = 0.0;
            for (std::size_t i = 0; i < g.n_points; ++i) {
                const double r =
                    (growth * n.values[i] - stepped.values[i]) * (1.0 / dt + b.values[i]);
                sq += r * r;
            }
            const double stationary = std::sqrt(dx * sq);
            if (stationary <= 10.0 * cfg.stop_tol) {
                EigenPair out;
                for (auto& v : stepped.values) v /= growth;
                out.n = std::move(stepped);
                out.lambda0 = integrate(out.n) / integrate_x(out.n);
                out.lambda_log = std::log(growth) / dt;
                out.lambda_growth = (growth - 1.0) / dt;
                out.iterations = k;
                out.final_residual = residual;
                out.stationary_residual = stationary;
                return out;
            }
        }

        for (auto& v : stepped.values) v /= growth;
        n = std::move(stepped);
        prev_growth = growth;
    }
    throw SolverError("solve_eigenpair: no convergence within the iteration budget",
                      last_residual, cfg.max_iters);
}

GridFunction exact_constant_b(const Grid& g, double b, std::size_t n_terms) {
    if (!(b > 0.0) || !std::isfinite(b))
        throw std::invalid_argument("exact_constant_b: rate must be positive");
    if (n_terms == 0)
        throw std::invalid_argument("exact_constant_b: need at least one term");

    GridFunction out(g);
    double alpha = 1.0;
    for (std::size_t n = 0; n < n_terms; ++n) {
        if (n > 0) alpha *= -2.0 / (std::ldexp(1.0, static_cast<int>(n)) - 1.0);
        if (std::abs(alpha) < 1e-16) break;
        const double rate = std::ldexp(b, static_cast<int>(n) + 1);  // 2^{n+1} b
        for (std::size_t i = 0; i < g.n_points; ++i)
            out.values[i] += alpha * std::exp(-rate * g.node(i));
    }
    const double mass = integrate(out);
    if (!(mass > 0.0))
        throw SolverError("exact_constant_b: series mass is not positive on this grid");
    for (auto& v : out.values) v /= mass;
    return out;
}

double relative_l1_error(const GridFunction& n, const GridFunction& m) {
    if (!(n.grid == m.grid))
        throw std::invalid_argument("relative_l1_error: grids differ");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        num += std::abs(n.values[i] - m.values[i]);
        den += std::abs(m.values[i]);
    }
    if (den == 0.0)
        throw std::domain_error("relative_l1_error: reference function is zero");
    return num / den;
}

} // namespace celldiv
