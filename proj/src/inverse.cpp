#include "celldiv/inverse.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "celldiv/dilation.hpp"

namespace celldiv {

namespace {

void check_alpha(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("inverse solve: alpha must be finite and >= 0");
}

// The quasi-reversibility march. At alpha = 0 it reduces to the plain
// strategy-1 recursion except that L_0 is used as given.
GridFunction qr_sweep(const GridFunction& l, double alpha) {
    const std::size_t last = l.grid.last_index();
    const double a = alpha / l.grid.dx();
    const std::vector<double>& lv = l.values;

    std::vector<double> h(last + 1, 0.0);
    // Row 1 references H_1 on both sides: (a + 4 - 1/2) H_1 = a H_0 + (L_0 + L_1)/2.
    h[1] = 0.5 * (lv[0] + lv[1]) / (a + 3.5);
    for (std::size_t i = 2; i <= last; ++i) {
        double rhs = a * h[i - 1];
        if (i % 2 == 0) {
            rhs += h[i / 2] + lv[i / 2];
        } else {
            rhs += 0.5 * (h[(i - 1) / 2] + h[(i + 1) / 2]);
            rhs += 0.5 * (lv[(i - 1) / 2] + lv[(i + 1) / 2]);
        }
        h[i] = rhs / (a + 4.0);
    }
    return GridFunction(l.grid, std::move(h));
}

LambdaEstimate pick_lambda(const LambdaEstimate& estimated, const std::optional<double>& override_value) {
    if (!override_value) return estimated;
    return {*override_value, estimated.variant};
}

InverseResult finish(GridFunction h, const GridFunction& n_eps, const InverseConfig& cfg,
                     Method method, const LambdaEstimate& lambda) {
    InverseResult out;
    out.b = recover_b(h, n_eps, cfg.b_threshold);
    out.h = std::move(h);
    out.lambda_used = lambda;
    out.method = method;
    out.alpha = cfg.alpha;
    return out;
}

} // namespace

const char* to_string(Method m) {
    switch (m) {
        case Method::brute: return "brute";
        case Method::filter: return "filter";
        case Method::qr: return "qr";
        case Method::mixed: return "mixed";
    }
    return "unknown";
}

Method method_from_string(const std::string& s) {
    if (s == "brute") return Method::brute;
    if (s == "filter") return Method::filter;
    if (s == "qr") return Method::qr;
    if (s == "mixed") return Method::mixed;
    throw std::invalid_argument("unknown inverse method: " + s);
}

std::pair<GridFunction, LambdaEstimate> build_l_filter(
    const GridFunction& n_eps, double alpha, std::optional<double> lambda_override) {
    check_alpha(alpha);
    const GridFunction dn = regularized_derivative(n_eps, alpha);
    const LambdaEstimate lambda = pick_lambda(lambda_ratio_filter(n_eps, dn), lambda_override);

    GridFunction l(n_eps.grid);
    for (std::size_t i = 0; i < l.size(); ++i)
        l.values[i] = dn.values[i] + lambda.value * n_eps.values[i];
    l.values[0] = 0.0;
    return {std::move(l), lambda};
}

InverseResult solve_brute(const GridFunction& n_eps, const InverseConfig& cfg) {
    const LambdaEstimate lambda = pick_lambda(lambda_ratio_plain(n_eps), cfg.lambda_override);
    const std::size_t last = n_eps.grid.last_index();
    const double dx = n_eps.grid.dx();
    const std::vector<double>& nv = n_eps.values;

    GridFunction l(n_eps.grid);
    for (std::size_t i = 0; i <= last; ++i) {
        double dn;
        if (i == 0) {
            dn = (-3.0 * nv[0] + 4.0 * nv[1] - nv[2]) / (2.0 * dx);
        } else if (i == last) {
            dn = (3.0 * nv[last] - 4.0 * nv[last - 1] + nv[last - 2]) / (2.0 * dx);
        } else {
            dn = (nv[i + 1] - nv[i - 1]) / (2.0 * dx);
        }
        l.values[i] = dn + lambda.value * nv[i];
    }
    return finish(qr_sweep(l, 0.0), n_eps, cfg, Method::brute, lambda);
}

InverseResult solve_filter(const GridFunction& n_eps, const InverseConfig& cfg) {
    check_alpha(cfg.alpha);
    auto [l, lambda] = build_l_filter(n_eps, cfg.alpha, cfg.lambda_override);
    DilationSolution dil = solve_from_zero(l);
    return finish(std::move(dil.h), n_eps, cfg, Method::filter, lambda);
}

InverseResult solve_qr(const GridFunction& n_eps, const InverseConfig& cfg) {
    check_alpha(cfg.alpha);
    const LambdaEstimate lambda =
        pick_lambda(lambda_ratio_qr(n_eps, cfg.alpha), cfg.lambda_override);
    const std::size_t last = n_eps.grid.last_index();
    const double dx = n_eps.grid.dx();
    const std::vector<double>& nv = n_eps.values;

    GridFunction l(n_eps.grid);
    for (std::size_t i = 0; i <= last; ++i) {
        const double ahead = (i == last) ? 0.0 : nv[i + 1];  // zero beyond the grid
        l.values[i] = lambda.value * nv[i] + (ahead - nv[i]) / dx;
    }
    return finish(qr_sweep(l, cfg.alpha), n_eps, cfg, Method::qr, lambda);
}

InverseResult solve_mixed(const GridFunction& n_eps, const InverseConfig& cfg) {
    check_alpha(cfg.alpha);
    const GridFunction n_smooth = mollify(n_eps, cfg.alpha);
    const GridFunction dn = regularized_derivative(n_eps, cfg.alpha);
    const LambdaEstimate lambda =
        pick_lambda(lambda_ratio_mixed(n_smooth, cfg.alpha), cfg.lambda_override);

    GridFunction l(n_eps.grid);
    for (std::size_t i = 0; i < l.size(); ++i)
        l.values[i] = dn.values[i] + lambda.value * n_smooth.values[i];
    return finish(qr_sweep(l, cfg.alpha), n_eps, cfg, Method::mixed, lambda);
}

GridFunction recover_b(const GridFunction& h, const GridFunction& n_eps, double threshold) {
    if (!(h.grid == n_eps.grid))
        throw std::invalid_argument("recover_b: grids differ");
    GridFunction b(h.grid);
    for (std::size_t i = 0; i < b.size(); ++i)
        b.values[i] = (n_eps.values[i] > threshold)
                          ? h.values[i] / n_eps.values[i]
                          : std::numeric_limits<double>::quiet_NaN();
    return b;
}

double sweep_residual(const GridFunction& h, const GridFunction& l, double alpha) {
    if (!(h.grid == l.grid))
        throw std::invalid_argument("sweep_residual: grids differ");
    const std::size_t last = h.grid.last_index();
    const double a = alpha / h.grid.dx();
    const std::vector<double>& hv = h.values;
    const std::vector<double>& lv = l.values;

    double sq = hv[0] * hv[0];
    for (std::size_t i = 1; i <= last; ++i) {
        const double halves = (i % 2 == 0)
                                  ? hv[i / 2] + lv[i / 2]
                                  : 0.5 * (hv[(i - 1) / 2] + hv[(i + 1) / 2] +
                                           lv[(i - 1) / 2] + lv[(i + 1) / 2]);
        const double r = a * (hv[i] - hv[i - 1]) + 4.0 * hv[i] - halves;
        sq += r * r;
    }
    return std::sqrt(sq);
}

} // namespace celldiv
