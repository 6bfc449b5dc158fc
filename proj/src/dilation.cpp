#include "celldiv/dilation.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "celldiv/errors.hpp"

namespace celldiv {

namespace {

double half_value(const std::vector<double>& v, std::size_t i) {
    if (i % 2 == 0) return v[i / 2];
    return 0.5 * (v[(i - 1) / 2] + v[(i + 1) / 2]);
}

// Residual of 4 H_i = H_{i/2} + L_{i/2} for i >= 1 plus the H_0 = 0 row.
double forward_residual(const std::vector<double>& h, const std::vector<double>& l) {
    double sq = h[0] * h[0];
    for (std::size_t i = 1; i < h.size(); ++i) {
        const double r = 4.0 * h[i] - half_value(h, i) - half_value(l, i);
        sq += r * r;
    }
    return std::sqrt(sq);
}

std::vector<double> coerced_l(const GridFunction& l, bool& flag) {
    std::vector<double> lv = l.values;
    flag = lv.at(0) != 0.0;
    lv[0] = 0.0;
    return lv;
}

} // namespace

DilationSolution solve_from_zero(const GridFunction& l) {
    DilationSolution out;
    out.strategy = DilationStrategy::from_zero;
    const std::vector<double> lv = coerced_l(l, out.l0_coerced);
    const std::size_t last = l.grid.last_index();

    std::vector<double> h(last + 1, 0.0);
    // 4 H_1 = (H_0 + H_1)/2 + (L_0 + L_1)/2  =>  (4 - 1/2) H_1 = (L_0 + L_1)/2.
    h[1] = 0.5 * (lv[0] + lv[1]) / 3.5;
    for (std::size_t i = 2; i <= last; ++i)
        h[i] = (half_value(h, i) + half_value(lv, i)) / 4.0;

    out.residual_norm = forward_residual(h, lv);
    out.h = GridFunction(l.grid, std::move(h));
    return out;
}

DilationSolution solve_from_infinity(const GridFunction& l) {
    DilationSolution out;
    out.strategy = DilationStrategy::from_infinity;
    const std::vector<double> lv = coerced_l(l, out.l0_coerced);
    const std::size_t last = l.grid.last_index();

    std::vector<double> h(last + 1, 0.0);
    for (std::size_t i = last; i >= 2; --i) {
        double acc = -lv[i];
        if (2 * i <= last) acc += 2.0 * h[2 * i];
        if (2 * i + 1 <= last) acc += h[2 * i + 1];
        if (2 * i - 1 <= last) acc += h[2 * i - 1];
        h[i] = acc;
    }
    h[1] = (last >= 2 ? 4.0 * h[2] : 0.0) - lv[1];
    h[0] = 0.0;

    double sq = h[0] * h[0];
    {
        const double r1 = h[1] - ((last >= 2 ? 4.0 * h[2] : 0.0) - lv[1]);
        sq += r1 * r1;
    }
    for (std::size_t i = 2; i <= last; ++i) {
        double rhs = -lv[i];
        if (2 * i <= last) rhs += 2.0 * h[2 * i];
        if (2 * i + 1 <= last) rhs += h[2 * i + 1];
        if (2 * i - 1 <= last) rhs += h[2 * i - 1];
        const double r = h[i] - rhs;
        sq += r * r;
    }
    out.residual_norm = std::sqrt(sq);
    out.h = GridFunction(l.grid, std::move(h));
    return out;
}

DilationSolution solve_dense_oracle(const GridFunction& l) {
    DilationSolution out;
    out.strategy = DilationStrategy::dense_oracle;
    const std::vector<double> lv = coerced_l(l, out.l0_coerced);
    const std::size_t n = l.grid.n_points;

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    a(0, 0) = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        a(row, row) += 4.0;
        if (i % 2 == 0) {
            a(row, static_cast<Eigen::Index>(i / 2)) -= 1.0;
        } else {
            a(row, static_cast<Eigen::Index>((i - 1) / 2)) -= 0.5;
            a(row, static_cast<Eigen::Index>((i + 1) / 2)) -= 0.5;
        }
        rhs(row) = half_value(lv, i);
    }

    const Eigen::VectorXd x = a.partialPivLu().solve(rhs);
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = x(static_cast<Eigen::Index>(i));

    out.residual_norm = forward_residual(h, lv);
    out.h = GridFunction(l.grid, std::move(h));
    return out;
}

double series_h1(const std::function<double(double)>& l, double x, double tol) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error("series_h1: x must be finite and nonnegative");
    double sum = 0.0;
    double weight = 1.0;
    double arg = x;
    for (int n = 1; n <= 200; ++n) {
        weight *= 0.25;
        arg *= 0.5;
        const double term = weight * l(arg);
        sum += term;
        if (std::abs(term) < tol) return sum;
    }
    throw SolverError("series_h1: no convergence within 200 terms");
}

double series_h2(const std::function<double(double)>& l, double x, double tol) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error("series_h2: x must be finite and nonnegative");
    double sum = 0.0;
    double prev_mag = -1.0;
    int growing = 0;
    for (int n = 0; n <= 200; ++n) {
        const double term = -std::ldexp(1.0, 2 * n) * l(std::ldexp(x, n));
        sum += term;
        const double mag = std::abs(term);
        if (mag < tol) return sum;
        growing = (prev_mag >= 0.0 && mag > prev_mag) ? growing + 1 : 0;
        if (growing >= 10)
            throw SolverError("series_h2: terms keep growing; series diverges for this L",
                              mag, static_cast<std::size_t>(n));
        prev_mag = mag;
    }
    throw SolverError("series_h2: no convergence within 200 terms");
}

double kernel_witness(const std::function<double(double)>& f_periodic, double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("kernel_witness: x must be finite and positive");
    return f_periodic(std::log(x)) / (x * x);
}

} // namespace celldiv
