#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sst/fft.hpp"
#include "sst/signal.hpp"
#include "sst/util.hpp"
#include "sst/wavelet.hpp"

namespace sst {

enum class PadMode {
    Reflect2N,    // smallest power of two >= 2N (default)
    ReflectPaper  // smallest power of two > N
};

/// Symmetric reflection without repeating the edge sample, original block
/// centered. Returns the padded series and the left-pad count.
inline std::pair<std::vector<double>, std::size_t> pad_reflect(const std::vector<double>& x,
                                                               std::size_t target) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("pad_reflect: need at least 2 samples");
    if (target < n) throw std::invalid_argument("pad_reflect: target smaller than input");
    std::size_t left = (target - n) / 2;
    std::vector<double> out(target);
    const std::ptrdiff_t period = 2 * static_cast<std::ptrdiff_t>(n) - 2;
    for (std::size_t j = 0; j < target; ++j) {
        std::ptrdiff_t i = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(left);
        std::ptrdiff_t m = ((i % period) + period) % period;
        if (m >= static_cast<std::ptrdiff_t>(n)) m = period - m;
        out[j] = x[static_cast<std::size_t>(m)];
    }
    return {std::move(out), left};
}

inline std::size_t padded_length(std::size_t n, PadMode mode) {
    switch (mode) {
        case PadMode::Reflect2N: return next_power_of_two(2 * n);
        case PadMode::ReflectPaper: {
            std::size_t p = next_power_of_two(n);
            return p > n ? p : 2 * p;
        }
    }
    throw std::invalid_argument("padded_length: bad mode");
}

/// Dyadic scale grid a_i = 2^{i/n_voices} * tau, i = i0..L*n_voices, where
/// N' = 2^{L+1}. Scales whose spectral band [1-delta,1+delta]/a lies entirely
/// above the Nyquist frequency are dropped (they see nothing).
struct ScaleGrid {
    std::vector<double> scales;
    int n_voices = 32;
    double delta_a = 1.0 / 32.0;  // log2 spacing
    int i0 = 1;                   // dyadic index of scales[0]

    static ScaleGrid dyadic(std::size_t n_padded, double tau, int n_voices, double delta) {
        if (n_voices < 1) throw std::invalid_argument("ScaleGrid: n_voices must be >= 1");
        if (!is_power_of_two(n_padded)) throw std::invalid_argument("ScaleGrid: padded length must be a power of two");
        ScaleGrid g;
        g.n_voices = n_voices;
        g.delta_a = 1.0 / n_voices;
        int L = 0;
        while ((std::size_t{1} << (L + 1)) < n_padded) ++L;  // n_padded = 2^{L+1}
        double a_min = 2.0 * tau * (1.0 - delta);            // band top at Nyquist
        int i_min = static_cast<int>(std::ceil(n_voices * std::log2(a_min / tau) - 1e-12));
        if (i_min < 1) i_min = 1;
        int i_max = L * n_voices;
        if (i_max < i_min) throw std::invalid_argument("ScaleGrid: empty grid");
        g.i0 = i_min;
        g.scales.reserve(i_max - i_min + 1);
        for (int i = i_min; i <= i_max; ++i)
            g.scales.push_back(std::pow(2.0, static_cast<double>(i) / n_voices) * tau);
        return g;
    }

    std::size_t size() const { return scales.size(); }
    /// log-grid quadrature weight of a^{-3/2} da at scale index i:
    /// da = a ln2 dlog2(a), so the summand weight is a^{-1/2} ln2 / n_voices.
    double quad_weight(std::size_t i) const {
        return std::pow(scales[i], -0.5) * std::log(2.0) * delta_a;
    }
};

/// CWT and its time-derivative field, stored scale-major: row i = scale i,
/// column n = padded time index.
struct CwtField {
    Matrix<cplx> w;   // (n_scales x n_padded)
    Matrix<cplx> dw;  // same shape, d/db values
    ScaleGrid grid;
    std::size_t n_padded = 0;
    std::size_t n_original = 0;
    std::size_t left_pad = 0;
    double tau = 1.0;
    MotherWavelet wavelet;
};

/// Spectral-domain CWT of an already padded power-of-two series:
///   row_a = invDFT( DFT(x) * sqrt(a) * hat(a xi) ),
///   d/db realized by the extra factor i 2 pi xi.
inline CwtField cwt_forward(const std::vector<double>& padded, double tau, const ScaleGrid& grid,
                            const MotherWavelet& wavelet, unsigned threads = 0) {
    const std::size_t np = padded.size();
    if (!is_power_of_two(np)) throw std::invalid_argument("cwt_forward: input length must be a power of two");
    const std::size_t na = grid.size();
    // Reject a grid whose every band lies above Nyquist; individual dead rows
    // at small scales are allowed and come out exactly zero.
    const double nyquist = 0.5 / tau;
    if ((1.0 - wavelet.delta) / grid.scales.back() > nyquist * (1.0 + 1e-12))
        throw std::invalid_argument("cwt_forward: scale grid exceeds the representable band");

    CwtField f;
    f.grid = grid;
    f.n_padded = np;
    f.tau = tau;
    f.wavelet = wavelet;
    f.w = Matrix<cplx>(na, np);
    f.dw = Matrix<cplx>(na, np);

    std::vector<cplx> spec = fft_forward(padded);
    std::vector<double> freqs(np);
    for (std::size_t k = 0; k < np; ++k) freqs[k] = fft_bin_freq(k, np, tau);

    parallel_for(na, [&](std::size_t i) {
        double a = grid.scales[i];
        double sa = std::sqrt(a);
        std::vector<cplx> row(np), drow(np);
        for (std::size_t k = 0; k < np; ++k) {
            double h = sa * wavelet.hat(a * freqs[k]);
            if (h == 0.0) {
                row[k] = drow[k] = cplx(0.0, 0.0);
            } else {
                cplx v = spec[k] * h;
                row[k] = v;
                drow[k] = v * cplx(0.0, 2.0 * M_PI * freqs[k]);
            }
        }
        fft_radix2(row, +1);
        fft_radix2(drow, +1);
        for (std::size_t n = 0; n < np; ++n) {
            f.w(i, n) = row[n];
            f.dw(i, n) = drow[n];
        }
    }, threads);
    return f;
}

/// Pads a sampled signal and transforms it in one step.
inline CwtField cwt_analyze(const SampledSignal& x, const MotherWavelet& wavelet, int n_voices,
                            PadMode mode = PadMode::Reflect2N, unsigned threads = 0) {
    std::size_t target = padded_length(x.size(), mode);
    auto [padded, left] = pad_reflect(x.values, target);
    ScaleGrid grid = ScaleGrid::dyadic(target, x.tau, n_voices, wavelet.delta);
    CwtField f = cwt_forward(padded, x.tau, grid, wavelet, threads);
    f.n_original = x.size();
    f.left_pad = left;
    return f;
}

}  // namespace sst
