#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace celldiv::detail {

std::size_t next_pow2(std::size_t n);

// In-place radix-2 transforms on power-of-two lengths. The forward transform
// uses the e^{-i xi x} kernel, X_k = sum_j x_j e^{-2 pi i j k / M}; the
// inverse applies the conjugate kernel and the 1/M factor.
void fft(std::vector<std::complex<double>>& a);
void ifft(std::vector<std::complex<double>>& a);

} // namespace celldiv::detail
