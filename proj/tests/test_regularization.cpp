#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "celldiv/direct.hpp"
#include "celldiv/fft.hpp"
#include "celldiv/grid.hpp"
#include "celldiv/regularization.hpp"

using namespace celldiv;

namespace {

double lcg_sym(std::uint64_t& state) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) * 0x1p-53 - 0.5;
}

double window(double x) { return std::exp(-8.0 * (x - 2.0) * (x - 2.0)); }

// Smooth test signal that decays to ~1e-14 at both domain ends, so the
// periodic extension used by the spectral routines is effectively seamless.
GridFunction windowed_sine(const Grid& g) {
    GridFunction f(g);
    for (std::size_t i = 0; i < g.n_points; ++i) {
        const double x = g.node(i);
        f[i] = std::sin(6.0 * x) * window(x);
    }
    return f;
}

double windowed_sine_derivative(double x) {
    return (6.0 * std::cos(6.0 * x) - 16.0 * (x - 2.0) * std::sin(6.0 * x)) * window(x);
}

}  // namespace

TEST_CASE("fft resolves a pure mode into a single bin") {
    const std::size_t m = 64, k0 = 5;
    std::vector<std::complex<double>> a(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double ang = 2.0 * M_PI * static_cast<double>(j * k0) / static_cast<double>(m);
        a[j] = std::polar(1.0, ang);
    }
    detail::fft(a);
    for (std::size_t k = 0; k < m; ++k) {
        const std::complex<double> expect =
            (k == k0) ? std::complex<double>(static_cast<double>(m), 0.0) : 0.0;
        CHECK(std::abs(a[k] - expect) <= 1e-12 * static_cast<double>(m));
    }
}

TEST_CASE("fft round trip and Parseval identity on random data") {
    const std::size_t m = 256;
    std::vector<std::complex<double>> a(m);
    std::uint64_t state = 99;
    for (auto& v : a) v = {lcg_sym(state), lcg_sym(state)};
    const std::vector<std::complex<double>> orig = a;

    double time_energy = 0.0;
    for (const auto& v : a) time_energy += std::norm(v);

    detail::fft(a);
    double freq_energy = 0.0;
    for (const auto& v : a) freq_energy += std::norm(v);
    CHECK(freq_energy / static_cast<double>(m) == doctest::Approx(time_energy).epsilon(1e-13));

    detail::ifft(a);
    for (std::size_t j = 0; j < m; ++j) CHECK(std::abs(a[j] - orig[j]) <= 1e-13);
}

TEST_CASE("fft rejects non-power-of-two lengths") {
    std::vector<std::complex<double>> a(3);
    CHECK_THROWS_AS(detail::fft(a), std::invalid_argument);
    CHECK(detail::next_pow2(3) == 4);
    CHECK(detail::next_pow2(16) == 16);
    CHECK(detail::next_pow2(17) == 32);
}

TEST_CASE("mollifier symbol values and damping bound") {
    CHECK(mollifier_hat(0.0, 123.0) == 1.0);
    CHECK(mollifier_hat(2.0, 3.0) == doctest::Approx(1.0 / std::sqrt(37.0)).epsilon(1e-15));
    CHECK_THROWS_AS(mollifier_hat(-1.0, 1.0), std::invalid_argument);

    // |1 - rho_hat(xi)| <= alpha |xi| for every frequency: the bias of the
    // low-pass filter is controlled linearly by alpha.
    for (double alpha : {1e-3, 1e-2, 0.1, 1.0, 10.0}) {
        for (int k = -40; k <= 40; ++k) {
            const double xi = std::copysign(std::pow(10.0, std::abs(k) / 8.0 - 2.0), k);
            const double miss = 1.0 - mollifier_hat(alpha, xi);
            CHECK(miss * miss <= alpha * alpha * xi * xi * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("raw spectral derivative is exact on a windowed sine") {
    Grid g(4.0, 513);
    GridFunction d = regularized_derivative(windowed_sine(g), 0.0);
    CHECK(d[0] == 0.0);
    double worst = 0.0;
    for (std::size_t i = 1; i < g.n_points; ++i)
        worst = std::max(worst, std::abs(d[i] - windowed_sine_derivative(g.node(i))));
    CHECK(worst <= 1e-10);  // measured 8.3e-13
}

TEST_CASE("damped derivative stays bounded on rough data") {
    Grid g(4.0, 257);
    GridFunction f(g);
    std::uint64_t state = 3;
    for (std::size_t i = 1; i < g.n_points; ++i) f[i] = lcg_sym(state);

    const double big = [&] {
        GridFunction d = regularized_derivative(f, 0.0);
        double worst = 0.0;
        for (double v : d.values) worst = std::max(worst, std::abs(v));
        return worst;
    }();
    const double damped = [&] {
        GridFunction d = regularized_derivative(f, 0.5);
        double worst = 0.0;
        for (double v : d.values) worst = std::max(worst, std::abs(v));
        return worst;
    }();
    // White noise drives the raw derivative to O(1/dx); the damped symbol is
    // bounded by 1/alpha.
    CHECK(big > 20.0);
    CHECK(damped < 2.0 / 0.5);
}

TEST_CASE("mollify with alpha = 0 is the identity") {
    Grid g(4.0, 200);  // non-power-of-two size exercises the padding
    GridFunction f = windowed_sine(g);
    GridFunction m = mollify(f, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(m[i] - f[i]) <= 1e-12);
}

TEST_CASE("mollifier bias decreases about linearly in alpha") {
    Grid g(4.0, 513);
    GridFunction f = windowed_sine(g);

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int c = 0;
    for (double alpha : {0.4, 0.2, 0.1, 0.05}) {
        GridFunction m = mollify(f, alpha);
        double sq = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) sq += (m[i] - f[i]) * (m[i] - f[i]);
        const double lx = std::log(alpha);
        const double ly = 0.5 * std::log(g.dx() * sq);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++c;
    }
    const double slope = (c * sxy - sx * sy) / (c * sxx - sx * sx);
    CHECK(slope == doctest::Approx(1.0).epsilon(0.25));  // measured 1.09
}

TEST_CASE("eigenvalue estimators compute their defining ratios") {
    Grid g(3.0, 4);  // dx = 1
    GridFunction n(g, {0.0, 2.0, 1.0, 0.0});
    // mass = 3, first moment = 4

    LambdaEstimate plain = lambda_ratio_plain(n);
    CHECK(plain.value == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(plain.variant == LambdaVariant::plain);

    GridFunction dn(g, {0.0, 1.0, 0.0, 0.0});
    LambdaEstimate filt = lambda_ratio_filter(n, dn);
    CHECK(filt.value == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(filt.variant == LambdaVariant::filter);

    LambdaEstimate qr = lambda_ratio_qr(n, 2.0);
    CHECK(qr.value == doctest::Approx(3.0 / 5.5).epsilon(1e-15));
    CHECK(qr.variant == LambdaVariant::qr);

    LambdaEstimate mixed = lambda_ratio_mixed(n, 2.0);
    CHECK(mixed.value == qr.value);
    CHECK(mixed.variant == LambdaVariant::mixed);

    // alpha = 0 reduces the damped ratio to the plain one.
    CHECK(lambda_ratio_qr(n, 0.0).value == plain.value);

    GridFunction zero(g);
    CHECK_THROWS_AS(lambda_ratio_plain(zero), std::domain_error);
    CHECK_THROWS_AS(lambda_ratio_filter(zero, dn), std::domain_error);
    CHECK_THROWS_AS(lambda_ratio_qr(zero, 1.0), std::domain_error);
}

TEST_CASE("estimators recover the eigenvalue from the exact profile") {
    Grid g(12.0, 2401);
    GridFunction n = exact_constant_b(g, 1.0);

    CHECK(lambda_ratio_plain(n).value == doctest::Approx(1.0).epsilon(1e-4));
    GridFunction dn = regularized_derivative(n, 0.01);
    CHECK(lambda_ratio_filter(n, dn).value == doctest::Approx(1.0).epsilon(0.05));
    CHECK(lambda_ratio_qr(n, 0.01).value == doctest::Approx(1.0).epsilon(0.05));
}
