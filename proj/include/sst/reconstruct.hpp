#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sst/cwt.hpp"
#include "sst/ridge.hpp"
#include "sst/sst.hpp"
#include "sst/util.hpp"

namespace sst {

struct AnalysisConfig {
    int n_voices = 32;
    double delta = 0.3;
    double d_separation = 0.5;  // component separation parameter, delta < d/(1+d)
    std::size_t k = 2;          // number of seasonal components
    double lambda = 30.0;       // ridge smoothness weight (calibrated default)
    double gamma = -1.0;        // threshold; negative = auto
    double kappa = 0.5;         // auto-threshold scale factor
    double c1 = -1.0;           // lowest seasonal frequency; negative = auto
    double c1_margin = 0.5;     // auto c1 = margin * low quantile of lowest ridge IF
    PadMode pad_mode = PadMode::Reflect2N;
    unsigned threads = 0;  // 0 = hardware count

    // Reconstruction band and ridge-search tuning.
    double band_wide_low = 0.1;     // extra low-side width of the wide band
    double band_tight = 0.15;       // half-width of the tight band (noisy regime)
    double clean_ratio = 0.05;      // gamma below this fraction of the ridge level = clean
    double edge_periods = 1.5;      // wide band within this many periods of the data edges
    double ridge_floor_frac = 0.01; // ridge search starts above this fraction of Nyquist
    double mask_frac = 0.45;        // peel mask half-width (relative)

    void validate() const {
        if (n_voices < 4) throw std::invalid_argument("AnalysisConfig: n_voices must be >= 4");
        if (k < 1) throw std::invalid_argument("AnalysisConfig: k must be >= 1");
        if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("AnalysisConfig: delta must be in (0,1)");
        if (!(delta < d_separation / (1.0 + d_separation)))
            throw std::invalid_argument("AnalysisConfig: requires delta < d/(1+d)");
        if (lambda < 0.0) throw std::invalid_argument("AnalysisConfig: lambda must be non-negative");
    }
};

struct ComponentEstimate {
    std::vector<cplx> complex_series;  // analytic form, original window
    std::vector<double> series;        // Re of the above
    std::vector<double> am;
    std::vector<double> phase;  // unwrapped, cycles
    std::vector<double> inst_freq;
    std::vector<std::uint8_t> phase_interpolated;  // 1 where am was below threshold
    std::vector<std::pair<std::size_t, std::size_t>> scale_band;  // per time, inclusive scale-index range
    double ridge_score = 0.0;
};

struct Decomposition {
    std::vector<ComponentEstimate> components;
    std::vector<double> trend;
    std::vector<double> residual;
    double gamma = 0.0;
    double r_psi = 0.0;
    double c1 = 0.0;
    bool all_zero_input = false;
};

namespace detail {

/// Shared band-sum: 2/R_psi * sum of w * a^{-1/2} ln2/n_v over the selected
/// scale cells. The factor 2 compensates the one-sided spectral support of
/// the wavelet, which sees half of each real cosine.
inline cplx band_sum(const CwtField& field, std::size_t n, std::size_t i_lo, std::size_t i_hi,
                     double gamma, double r_psi) {
    cplx acc(0.0, 0.0);
    for (std::size_t i = i_lo; i <= i_hi && i < field.grid.size(); ++i) {
        cplx v = field.w(i, n);
        if (std::abs(v) > gamma) acc += v * field.grid.quad_weight(i);
    }
    return 2.0 / r_psi * acc;
}

/// First scale index with a >= value (grid is increasing).
inline std::size_t scale_lower_bound(const ScaleGrid& g, double value) {
    return static_cast<std::size_t>(
        std::lower_bound(g.scales.begin(), g.scales.end(), value) - g.scales.begin());
}

/// Last scale index with a <= value, or npos if none.
inline std::size_t scale_upper_bound(const ScaleGrid& g, double value) {
    auto it = std::upper_bound(g.scales.begin(), g.scales.end(), value);
    if (it == g.scales.begin()) return static_cast<std::size_t>(-1);
    return static_cast<std::size_t>(it - g.scales.begin()) - 1;
}

}  // namespace detail

/// Band reconstruction around a ridge, per Eq.-style scale limits
/// [(1-delta)/IF, (1+delta)/IF] with |w| > gamma. Returns the complex
/// series over the padded window.
inline std::vector<cplx> component_reconstruct(const CwtField& field, const RidgeCurve& ridge,
                                               const FrequencyGrid& freq, double gamma,
                                               std::vector<std::uint8_t>* out_of_band = nullptr) {
    const std::size_t np = field.w.cols();
    if (ridge.bins.size() != np) throw std::invalid_argument("component_reconstruct: ridge length mismatch");
    const double delta = field.wavelet.delta;
    const double r_psi = field.wavelet.r_psi;
    std::vector<cplx> out(np, cplx(0.0, 0.0));
    if (out_of_band) out_of_band->assign(np, 0);
    for (std::size_t n = 0; n < np; ++n) {
        double iff = static_cast<double>(ridge.bins[n]) * freq.delta_xi;
        double a_lo = (1.0 - delta) / iff, a_hi = (1.0 + delta) / iff;
        std::size_t i_lo = detail::scale_lower_bound(field.grid, a_lo);
        std::size_t i_hi = detail::scale_upper_bound(field.grid, a_hi);
        if (i_lo >= field.grid.size() || i_hi == static_cast<std::size_t>(-1) || i_lo > i_hi) {
            if (out_of_band) (*out_of_band)[n] = 1;  // ridge frequency outside representable band
            continue;
        }
        out[n] = detail::band_sum(field, n, i_lo, i_hi, gamma, r_psi);
    }
    return out;
}

/// Amplitude and unwrapped phase (cycles) of a complex component series.
/// Samples with amplitude <= max(gamma, floor) get their phase linearly
/// interpolated from the neighboring valid samples and are flagged.
inline std::pair<std::vector<double>, std::vector<double>> am_phase(
    const std::vector<cplx>& fc, double gamma, std::vector<std::uint8_t>* flags = nullptr) {
    const std::size_t n = fc.size();
    std::vector<double> am(n), phase(n, 0.0);
    double mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        am[i] = std::abs(fc[i]);
        mx = std::max(mx, am[i]);
    }
    double floor_mag = std::max(gamma, 1e-12 * mx);
    std::vector<std::uint8_t> low(n, 0);
    for (std::size_t i = 0; i < n; ++i) low[i] = am[i] <= floor_mag ? 1 : 0;

    // unwrap: increments chosen in (-0.5, 0.5]
    double prev_arg = 0.0, acc = 0.0;
    bool started = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (low[i]) continue;
        double arg = std::atan2(fc[i].imag(), fc[i].real()) / (2.0 * M_PI);
        if (!started) {
            acc = arg;
            started = true;
        } else {
            double d = arg - prev_arg;
            d -= std::round(d);
            if (d <= -0.5) d += 1.0;  // increments in (-0.5, 0.5]
            acc += d;
        }
        prev_arg = arg;
        phase[i] = acc;
    }
    // interpolate flagged samples between valid neighbors
    std::size_t i = 0;
    while (i < n) {
        if (!low[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && low[j]) ++j;
        if (i == 0 && j == n) break;  // nothing valid at all
        if (i == 0) {
            for (std::size_t t = 0; t < j; ++t) phase[t] = phase[j];
        } else if (j == n) {
            for (std::size_t t = i; t < n; ++t) phase[t] = phase[i - 1];
        } else {
            double lo = phase[i - 1], hi = phase[j];
            double span = static_cast<double>(j - (i - 1));
            for (std::size_t t = i; t < j; ++t)
                phase[t] = lo + (hi - lo) * static_cast<double>(t - (i - 1)) / span;
        }
        i = j;
    }
    if (flags) *flags = low;
    return {std::move(am), std::move(phase)};
}

/// Trend estimate: subtract everything the wavelet sees at scales
/// a <= (1+delta)/c1, i.e. frequencies above c1 (1-delta)/(1+delta).
inline std::vector<double> trend_estimate(const std::vector<double>& y_padded, const CwtField& field,
                                          double c1) {
    if (!(c1 > 0.0) || c1 >= 0.5 / field.tau)
        throw std::invalid_argument("trend_estimate: c1 outside (0, Nyquist)");
    const std::size_t np = field.w.cols();
    if (y_padded.size() != np) throw std::invalid_argument("trend_estimate: length mismatch");
    double a_cap = (1.0 + field.wavelet.delta) / c1;
    std::size_t i_hi = detail::scale_upper_bound(field.grid, a_cap);
    std::vector<double> out(np);
    for (std::size_t n = 0; n < np; ++n) {
        cplx high(0.0, 0.0);
        if (i_hi != static_cast<std::size_t>(-1))
            high = detail::band_sum(field, n, 0, i_hi, 0.0, field.wavelet.r_psi);
        out[n] = y_padded[n] - high.real();
    }
    return out;
}

namespace detail {

/// Squeezed-band reconstruction used by the pipeline: sums CWT cells whose
/// reassigned frequency falls in a band around the ridge. The band is wide
/// ([1-delta-band_wide_low, 1+delta] with the gamma filter) in the clean
/// regime and near the data edges, where reflection smears the estimate
/// downward, and tight ([1 -+ band_tight], unthresholded) in the noisy
/// interior, where the band itself rejects the noise. Adjacent ridges cap
/// each band at the geometric midpoint.
inline std::vector<cplx> squeezed_band_reconstruct(
    const CwtField& field, const Matrix<double>& omega, const std::vector<std::vector<double>>& ridge_ifs,
    std::size_t which, double gamma, const AnalysisConfig& cfg) {
    const std::size_t np = field.w.cols(), na = field.w.rows();
    const auto& iff = ridge_ifs[which];
    const double delta = field.wavelet.delta;
    const double r_psi = field.wavelet.r_psi;

    // clean regime when gamma is negligible against the ridge-center level
    double level;
    {
        std::vector<double> samples;
        for (std::size_t n = field.left_pad; n < field.left_pad + field.n_original; n += 50) {
            double a_c = 1.0 / iff[n];
            std::size_t i = scale_lower_bound(field.grid, a_c);
            if (i >= na) i = na - 1;
            samples.push_back(std::abs(field.w(i, n)));
        }
        std::sort(samples.begin(), samples.end());
        level = samples.empty() ? 0.0 : samples[samples.size() / 2];
    }
    const bool clean = gamma < cfg.clean_ratio * level;

    std::vector<cplx> out(np, cplx(0.0, 0.0));
    for (std::size_t n = 0; n < np; ++n) {
        double lo_r, hi_r;
        bool wide;
        if (n < field.left_pad || n >= field.left_pad + field.n_original) {
            wide = true;  // padded region; only relevant through exports
        } else {
            std::size_t l = n - field.left_pad;
            double dedge = static_cast<double>(std::min(l, field.n_original - 1 - l)) * field.tau;
            wide = clean || dedge < cfg.edge_periods / iff[n];
        }
        if (wide) {
            lo_r = 1.0 - delta - cfg.band_wide_low;
            hi_r = 1.0 + delta;
        } else {
            lo_r = 1.0 - cfg.band_tight;
            hi_r = 1.0 + cfg.band_tight;
        }
        double lo = lo_r * iff[n], hi = hi_r * iff[n];
        if (which > 0) lo = std::max(lo, std::sqrt(ridge_ifs[which - 1][n] * iff[n]));
        if (which + 1 < ridge_ifs.size()) hi = std::min(hi, std::sqrt(ridge_ifs[which + 1][n] * iff[n]));
        cplx acc(0.0, 0.0);
        for (std::size_t i = 0; i < na; ++i) {
            double om = omega(i, n);
            if (!omega_defined(om) || om < lo || om > hi) continue;
            cplx v = field.w(i, n);
            if (wide && std::abs(v) < gamma) continue;
            acc += v * field.grid.quad_weight(i);
        }
        out[n] = 2.0 / r_psi * acc;
    }
    return out;
}

}  // namespace detail

/// Full pipeline: pad, CWT, reassignment, threshold, squeeze, extract k
/// ridges, reconstruct components and trend, take the exact residual.
/// All outputs are trimmed to the original N samples.
inline Decomposition decompose(const SampledSignal& y, const AnalysisConfig& cfg) {
    cfg.validate();
    Decomposition dec;
    const std::size_t n = y.size();
    bool all_zero = true;
    for (double v : y.values)
        if (v != 0.0) {
            all_zero = false;
            break;
        }
    MotherWavelet wavelet = MotherWavelet::make(cfg.delta);
    dec.r_psi = wavelet.r_psi;
    if (all_zero) {
        dec.all_zero_input = true;
        dec.trend.assign(n, 0.0);
        dec.residual.assign(n, 0.0);
        return dec;
    }

    CwtField field = cwt_analyze(y, wavelet, cfg.n_voices, cfg.pad_mode, cfg.threads);
    const std::size_t np = field.n_padded, left = field.left_pad;
    Matrix<double> omega = reassignment(field);
    double gamma = cfg.gamma >= 0.0 ? cfg.gamma : default_threshold(field, cfg.kappa);
    dec.gamma = gamma;
    FrequencyGrid freq = FrequencyGrid::make(np, y.tau);

    // ridge extraction runs on the unthresholded squeezed field
    SstField s0 = synchrosqueeze(field, omega, 0.0, freq);
    RidgeOptions ropts;
    ropts.min_bin = static_cast<std::size_t>(
                        std::ceil(cfg.ridge_floor_frac * (0.5 / y.tau) / freq.delta_xi)) + 1;
    ropts.min_bin = std::min(ropts.min_bin, freq.n_bins);
    std::vector<RidgeCurve> ridges = extract_k_ridges(s0, cfg.k, cfg.lambda, cfg.mask_frac, ropts);

    std::vector<std::vector<double>> ridge_ifs;
    ridge_ifs.reserve(ridges.size());
    for (const auto& r : ridges) ridge_ifs.push_back(if_from_ridge(r, freq));

    auto [padded, lp] = pad_reflect(y.values, np);
    (void)lp;

    for (std::size_t k = 0; k < ridges.size(); ++k) {
        ComponentEstimate ce;
        ce.ridge_score = ridges[k].score;
        std::vector<cplx> fc = detail::squeezed_band_reconstruct(field, omega, ridge_ifs, k, gamma, cfg);
        ce.complex_series.assign(fc.begin() + left, fc.begin() + left + n);
        ce.series.resize(n);
        for (std::size_t l = 0; l < n; ++l) ce.series[l] = ce.complex_series[l].real();
        auto [am, ph] = am_phase(ce.complex_series, gamma, &ce.phase_interpolated);
        ce.am = std::move(am);
        ce.phase = std::move(ph);
        ce.inst_freq.assign(ridge_ifs[k].begin() + left, ridge_ifs[k].begin() + left + n);
        ce.scale_band.resize(n);
        for (std::size_t l = 0; l < n; ++l) {
            double iff = ce.inst_freq[l];
            ce.scale_band[l] = {detail::scale_lower_bound(field.grid, (1.0 - cfg.delta) / iff),
                                detail::scale_upper_bound(field.grid, (1.0 + cfg.delta) / iff)};
        }
        dec.components.push_back(std::move(ce));
    }

    // trend cutoff from the lowest ridge
    double c1 = cfg.c1;
    if (c1 <= 0.0) {
        if (!ridge_ifs.empty()) {
            std::vector<double> window(ridge_ifs[0].begin() + left, ridge_ifs[0].begin() + left + n);
            std::sort(window.begin(), window.end());
            double q05 = window[static_cast<std::size_t>(0.05 * static_cast<double>(window.size() - 1))];
            c1 = cfg.c1_margin * q05;
        } else {
            c1 = 0.8;
        }
    }
    dec.c1 = c1;
    std::vector<double> trend_padded = trend_estimate(padded, field, c1);
    dec.trend.assign(trend_padded.begin() + left, trend_padded.begin() + left + n);

    dec.residual.resize(n);
    for (std::size_t l = 0; l < n; ++l) {
        double acc = y.values[l] - dec.trend[l];
        for (const auto& c : dec.components) acc -= c.series[l];
        dec.residual[l] = acc;
    }
    return dec;
}

}  // namespace sst
