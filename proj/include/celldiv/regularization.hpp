#pragma once

#include "celldiv/grid.hpp"

namespace celldiv {

// Fourier symbol of the low-pass mollifier: 1 / sqrt(1 + alpha^2 xi^2).
double mollifier_hat(double alpha, double xi);

// Spectral derivative damped by the mollifier symbol: the data are
// zero-padded to the next power of two >= 2 * n_points, transformed,
// multiplied by i xi * mollifier_hat(alpha, xi) (Nyquist mode zeroed),
// transformed back and truncated. The node-0 value is forced to zero.
// alpha = 0 gives the raw spectral derivative of the padded extension.
GridFunction regularized_derivative(const GridFunction& n_eps, double alpha);

// Convolution with the mollifier, i.e. the same padded transform with the
// symbol alone. alpha = 0 is the identity up to roundoff.
GridFunction mollify(const GridFunction& n_eps, double alpha);

enum class LambdaVariant { plain, filter, qr, mixed };

const char* to_string(LambdaVariant v);

// One eigenvalue estimate together with the formula that produced it.
struct LambdaEstimate {
    double value = 0.0;
    LambdaVariant variant = LambdaVariant::plain;
};

// integrate(N) / integrate_x(N), the moment form of the eigenvalue relation.
LambdaEstimate lambda_ratio_plain(const GridFunction& n);

// -sum x_i dN_i / sum x_i N_i, with dN a regularized derivative of N.
LambdaEstimate lambda_ratio_filter(const GridFunction& n, const GridFunction& dn);

// integrate(N) / (integrate_x(N) + alpha/4 * integrate(N)).
LambdaEstimate lambda_ratio_qr(const GridFunction& n, double alpha);

// The qr ratio evaluated on mollified data.
LambdaEstimate lambda_ratio_mixed(const GridFunction& n_smoothed, double alpha);

} // namespace celldiv
