#include "celldiv/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace celldiv::detail {

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

void fft(std::vector<std::complex<double>>& a) {
    const std::size_t m = a.size();
    if (m == 0 || (m & (m - 1)) != 0)
        throw std::invalid_argument("fft: length must be a power of two");
    if (m == 1) return;

    for (std::size_t i = 1, j = 0; i < m; ++i) {
        std::size_t bit = m >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    // Twiddles from std::polar per index keep the roots accurate at every
    // stage instead of accumulating products.
    std::vector<std::complex<double>> roots(m / 2);
    for (std::size_t j = 0; j < m / 2; ++j) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
        roots[j] = std::polar(1.0, ang);
    }

    for (std::size_t len = 2; len <= m; len <<= 1) {
        const std::size_t step = m / len;
        for (std::size_t start = 0; start < m; start += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> w = roots[j * step];
                const std::complex<double> u = a[start + j];
                const std::complex<double> t = w * a[start + j + len / 2];
                a[start + j] = u + t;
                a[start + j + len / 2] = u - t;
            }
        }
    }
}

void ifft(std::vector<std::complex<double>>& a) {
    for (auto& v : a) v = std::conj(v);
    fft(a);
    const double inv = 1.0 / static_cast<double>(a.size());
    for (auto& v : a) v = std::conj(v) * inv;
}

} // namespace celldiv::detail
