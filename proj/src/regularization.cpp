#include "celldiv/regularization.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "celldiv/errors.hpp"
#include "celldiv/fft.hpp"

namespace celldiv {

namespace {

void check_alpha(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("regularization: alpha must be finite and >= 0");
}

// Applies a Fourier symbol on the zero-padded periodic extension of f.
// Frequencies follow the standard DFT layout: xi_k = 2 pi k / (M dx) for
// k < M/2 and 2 pi (k - M) / (M dx) above; the Nyquist mode is either zeroed
// (odd symbols) or scaled like the rest (even real symbols).
GridFunction spectral_apply(const GridFunction& f,
                            const std::function<std::complex<double>(double)>& symbol,
                            bool zero_nyquist) {
    const std::size_t n = f.size();
    const double dx = f.grid.dx();
    const std::size_t m = detail::next_pow2(2 * n);

    std::vector<std::complex<double>> buf(m, std::complex<double>(0.0, 0.0));
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        buf[i] = f.values[i];
        scale = std::max(scale, std::abs(f.values[i]));
    }

    detail::fft(buf);
    const double base = 2.0 * std::numbers::pi / (static_cast<double>(m) * dx);
    for (std::size_t k = 0; k < m; ++k) {
        if (k == m / 2) {
            if (zero_nyquist) {
                buf[k] = 0.0;
            } else {
                buf[k] *= symbol(base * static_cast<double>(k));
            }
            continue;
        }
        const double xi = (k < m / 2)
                              ? base * static_cast<double>(k)
                              : base * (static_cast<double>(k) - static_cast<double>(m));
        buf[k] *= symbol(xi);
    }
    detail::ifft(buf);

    GridFunction out(f.grid);
    double imag_residue = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = buf[i].real();
        imag_residue = std::max(imag_residue, std::abs(buf[i].imag()));
    }
    if (imag_residue > 1e-10 * std::max(1.0, scale))
        throw SolverError("spectral_apply: imaginary residue exceeds tolerance", imag_residue);
    return out;
}

double moment_denominator(const GridFunction& n) {
    const double m1 = integrate_x(n);
    if (!(m1 > 0.0))
        throw std::domain_error("lambda estimate: first moment of N must be positive");
    return m1;
}

} // namespace

double mollifier_hat(double alpha, double xi) {
    check_alpha(alpha);
    const double t = alpha * xi;
    return 1.0 / std::sqrt(1.0 + t * t);
}

GridFunction regularized_derivative(const GridFunction& n_eps, double alpha) {
    check_alpha(alpha);
    GridFunction out = spectral_apply(
        n_eps,
        [alpha](double xi) {
            const double t = alpha * xi;
            return std::complex<double>(0.0, xi / std::sqrt(1.0 + t * t));
        },
        /*zero_nyquist=*/true);
    out.values[0] = 0.0;
    return out;
}

GridFunction mollify(const GridFunction& n_eps, double alpha) {
    check_alpha(alpha);
    return spectral_apply(
        n_eps,
        [alpha](double xi) {
            const double t = alpha * xi;
            return std::complex<double>(1.0 / std::sqrt(1.0 + t * t), 0.0);
        },
        /*zero_nyquist=*/false);
}

const char* to_string(LambdaVariant v) {
    switch (v) {
        case LambdaVariant::plain: return "plain";
        case LambdaVariant::filter: return "filter";
        case LambdaVariant::qr: return "qr";
        case LambdaVariant::mixed: return "mixed";
    }
    return "unknown";
}

LambdaEstimate lambda_ratio_plain(const GridFunction& n) {
    return {integrate(n) / moment_denominator(n), LambdaVariant::plain};
}

LambdaEstimate lambda_ratio_filter(const GridFunction& n, const GridFunction& dn) {
    if (!(n.grid == dn.grid))
        throw std::invalid_argument("lambda_ratio_filter: grids differ");
    return {-integrate_x(dn) / moment_denominator(n), LambdaVariant::filter};
}

LambdaEstimate lambda_ratio_qr(const GridFunction& n, double alpha) {
    check_alpha(alpha);
    const double mass = integrate(n);
    const double denom = integrate_x(n) + 0.25 * alpha * mass;
    if (!(denom > 0.0))
        throw std::domain_error("lambda_ratio_qr: denominator must be positive");
    return {mass / denom, LambdaVariant::qr};
}

LambdaEstimate lambda_ratio_mixed(const GridFunction& n_smoothed, double alpha) {
    LambdaEstimate e = lambda_ratio_qr(n_smoothed, alpha);
    e.variant = LambdaVariant::mixed;
    return e;
}

} // namespace celldiv
