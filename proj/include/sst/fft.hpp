#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sst/util.hpp"

namespace sst {

/// In-place iterative radix-2 FFT for power-of-two lengths.
/// sign = -1: forward DFT, X_k = sum_m x_m e^{-i2pi km/n} (no normalization).
/// sign = +1: inverse transform including the 1/n factor.
inline void fft_radix2(std::vector<cplx>& x, int sign) {
    const std::size_t n = x.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fft_radix2: length must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = x[i + k];
                cplx v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (sign > 0) {
        double inv = 1.0 / static_cast<double>(n);
        for (auto& v : x) v *= inv;
    }
}

inline std::vector<cplx> fft_forward(const std::vector<double>& x) {
    std::vector<cplx> out(x.begin(), x.end());
    fft_radix2(out, -1);
    return out;
}

inline std::vector<cplx> fft_inverse(std::vector<cplx> x) {
    fft_radix2(x, +1);
    return x;
}

/// DFT bin frequency in cycles per unit time; bins above n/2 are negative.
inline double fft_bin_freq(std::size_t k, std::size_t n, double tau) {
    auto ks = static_cast<std::ptrdiff_t>(k);
    auto ns = static_cast<std::ptrdiff_t>(n);
    std::ptrdiff_t signed_k = (ks <= ns / 2) ? ks : ks - ns;
    return static_cast<double>(signed_k) / (static_cast<double>(n) * tau);
}

}  // namespace sst
