#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sst/cwt.hpp"
#include "sst/util.hpp"

namespace sst {

/// Linear frequency grid xi_j = j / (N' tau), j = 1..n_bins, covering
/// [1/(N' tau), 1/(2 tau)).
struct FrequencyGrid {
    double delta_xi = 0.0;
    std::size_t n_bins = 0;

    static FrequencyGrid make(std::size_t n_padded, double tau) {
        FrequencyGrid g;
        g.delta_xi = 1.0 / (static_cast<double>(n_padded) * tau);
        double top = 0.5 / tau - g.delta_xi;
        g.n_bins = static_cast<std::size_t>(std::floor(top / g.delta_xi + 1e-9));
        if (g.n_bins < 1) throw std::invalid_argument("FrequencyGrid: too few bins");
        return g;
    }

    double bin_freq(std::size_t j) const { return static_cast<double>(j) * delta_xi; }  // j is 1-based
};

inline constexpr double kOmegaUndefined = std::numeric_limits<double>::quiet_NaN();

inline bool omega_defined(double v) { return !std::isnan(v); }

/// Reassignment field omega = Re(-i dw / (2 pi w)), scale-major like the
/// CwtField. Cells with |w| below the floor, or with a non-positive
/// frequency estimate, carry the undefined sentinel.
inline Matrix<double> reassignment(const CwtField& field, double floor_abs = -1.0) {
    const std::size_t na = field.w.rows(), np = field.w.cols();
    if (floor_abs < 0.0) {
        double mx = 0.0;
        for (const auto& v : field.w.data()) mx = std::max(mx, std::abs(v));
        floor_abs = 1e-12 * mx;
    }
    Matrix<double> omega(na, np, kOmegaUndefined);
    for (std::size_t i = 0; i < na; ++i) {
        const cplx* wr = field.w.row(i);
        const cplx* dr = field.dw.row(i);
        double* out = omega.row(i);
        for (std::size_t n = 0; n < np; ++n) {
            double mag = std::abs(wr[n]);
            if (mag < floor_abs || mag == 0.0) continue;
            cplx ratio = cplx(0.0, -1.0) * dr[n] / (2.0 * M_PI * wr[n]);
            double est = ratio.real();
            if (est > 0.0 && std::isfinite(est)) out[n] = est;
        }
    }
    return omega;
}

/// MAD-style noise floor: kappa * median(|w| over the finest octave of
/// scales whose full band sits below Nyquist) / 0.6745 * sqrt(2 ln N').
inline double default_threshold(const CwtField& field, double kappa = 0.5) {
    const std::size_t na = field.w.rows(), np = field.w.cols();
    if (na == 0 || np == 0) throw std::invalid_argument("default_threshold: empty field");
    double a_cov = 2.0 * field.tau * (1.0 + field.wavelet.delta);
    std::size_t first = na;
    for (std::size_t i = 0; i < na; ++i) {
        if (field.grid.scales[i] >= a_cov) {
            first = i;
            break;
        }
    }
    if (first == na) first = 0;  // no fully covered scale; fall back to all
    double a_top = 2.0 * field.grid.scales[first];
    std::vector<double> mags;
    for (std::size_t i = first; i < na && field.grid.scales[i] < a_top; ++i) {
        const cplx* row = field.w.row(i);
        for (std::size_t n = 0; n < np; ++n) mags.push_back(std::abs(row[n]));
    }
    if (mags.empty()) return 0.0;
    auto mid = mags.begin() + static_cast<std::ptrdiff_t>(mags.size() / 2);
    std::nth_element(mags.begin(), mid, mags.end());
    double med = *mid;
    if (mags.size() % 2 == 0) {
        auto lo = std::max_element(mags.begin(), mid);
        med = 0.5 * (med + *lo);
    }
    return kappa * med / 0.6745 * std::sqrt(2.0 * std::log(static_cast<double>(np)));
}

/// Synchrosqueezed matrix, time-major: row n = padded time, column c = bin
/// c+1 on the frequency grid.
struct SstField {
    Matrix<cplx> s;  // (n_padded x n_bins)
    FrequencyGrid freq;
    double gamma = 0.0;
};

/// Relocates CWT coefficients to the nearest frequency bin of their
/// reassignment estimate. Cell (a_i, n) contributes
/// w * a_i^{-1/2} ln2 / n_voices to at most one bin.
inline SstField synchrosqueeze(const CwtField& field, const Matrix<double>& omega, double gamma,
                               const FrequencyGrid& freq) {
    const std::size_t na = field.w.rows(), np = field.w.cols();
    if (omega.rows() != na || omega.cols() != np) throw std::invalid_argument("synchrosqueeze: shape mismatch");
    SstField out;
    out.freq = freq;
    out.gamma = gamma;
    out.s = Matrix<cplx>(np, freq.n_bins);
    for (std::size_t i = 0; i < na; ++i) {
        const double weight_base = field.grid.quad_weight(i);
        const cplx* wr = field.w.row(i);
        const double* om = omega.row(i);
        for (std::size_t n = 0; n < np; ++n) {
            if (!omega_defined(om[n])) continue;
            double mag = std::abs(wr[n]);
            if (mag < gamma) continue;
            auto j = static_cast<long long>(std::llround(om[n] / freq.delta_xi));
            if (j < 1 || j > static_cast<long long>(freq.n_bins)) continue;
            out.s(n, static_cast<std::size_t>(j - 1)) += wr[n] * weight_base;
        }
    }
    return out;
}

}  // namespace sst
