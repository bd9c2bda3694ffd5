#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sst/sst.hpp"
#include "sst/util.hpp"

namespace sst {

/// One extracted time-frequency curve: 1-based frequency-bin index per
/// padded time sample.
struct RidgeCurve {
    std::vector<std::uint32_t> bins;
    double lambda = 0.0;
    double score = 0.0;

    double mean_bin() const {
        double acc = 0.0;
        for (auto b : bins) acc += b;
        return bins.empty() ? 0.0 : acc / static_cast<double>(bins.size());
    }
};

struct RidgeOptions {
    /// Max |c(m)-c(m-1)| per step; 0 selects ceil(0.05 * n_bins),
    /// values >= n_bins give the exact full-window mode.
    std::size_t window = 0;
    /// Lowest admissible bin (1-based). Bins below are not searched.
    std::size_t min_bin = 1;
};

namespace detail {

inline Matrix<double> sst_magnitudes(const SstField& s) {
    Matrix<double> mag(s.s.rows(), s.s.cols());
    for (std::size_t i = 0; i < s.s.data().size(); ++i) mag.data()[i] = std::abs(s.s.data()[i]);
    return mag;
}

/// DP over curves c maximizing
///   sum_m log(mag(c(m),m)/total) - lambda sum_m (c(m)-c(m-1))^2,
/// ties broken toward the lower bin index. Bins below min_bin are excluded.
inline RidgeCurve extract_ridge_from(const Matrix<double>& mag, double lambda,
                                     const RidgeOptions& opts) {
    const std::size_t np = mag.rows(), nb = mag.cols();
    double total = 0.0;
    for (double v : mag.data()) total += v;
    if (!(total > 0.0)) throw std::invalid_argument("extract_ridge: all-zero matrix");
    const double eps_floor = 1e-16 * total;
    const std::size_t c0 = (opts.min_bin >= 1 ? opts.min_bin : 1) - 1;  // first column searched
    if (c0 >= nb) throw std::invalid_argument("extract_ridge: min_bin out of range");
    const std::size_t ncols = nb - c0;
    std::size_t window = opts.window;
    if (window == 0) window = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(nb)));
    window = std::max<std::size_t>(1, std::min(window, ncols));

    auto score_at = [&](std::size_t n, std::size_t c) {
        double v = mag(n, c0 + c);
        return std::log(std::max(v, eps_floor) / total);
    };

    std::vector<double> pen(window + 1);
    for (std::size_t k = 0; k <= window; ++k) pen[k] = lambda * static_cast<double>(k) * static_cast<double>(k);

    std::vector<double> dp(ncols), ndp(ncols);
    Matrix<std::uint32_t> back(np, ncols);
    for (std::size_t c = 0; c < ncols; ++c) dp[c] = score_at(0, c);
    for (std::size_t n = 1; n < np; ++n) {
        std::uint32_t* bp = back.row(n);
        for (std::size_t c = 0; c < ncols; ++c) {
            std::size_t lo = c >= window ? c - window : 0;
            std::size_t hi = std::min(ncols - 1, c + window);
            double best = -std::numeric_limits<double>::infinity();
            std::size_t arg = lo;
            for (std::size_t cp = lo; cp <= hi; ++cp) {
                std::size_t k = cp > c ? cp - c : c - cp;
                double cand = dp[cp] - pen[k];
                if (cand > best) {
                    best = cand;
                    arg = cp;
                }
            }
            ndp[c] = best + score_at(n, c);
            bp[c] = static_cast<std::uint32_t>(arg);
        }
        dp.swap(ndp);
    }
    std::size_t cend = 0;
    double best = dp[0];
    for (std::size_t c = 1; c < ncols; ++c) {
        if (dp[c] > best) {
            best = dp[c];
            cend = c;
        }
    }
    RidgeCurve r;
    r.lambda = lambda;
    r.score = best;
    r.bins.resize(np);
    std::size_t cur = cend;
    for (std::size_t n = np; n-- > 0;) {
        r.bins[n] = static_cast<std::uint32_t>(c0 + cur + 1);
        if (n > 0) cur = back(n, cur);
    }
    return r;
}

}  // namespace detail

inline RidgeCurve extract_ridge(const SstField& s, double lambda, const RidgeOptions& opts = {}) {
    Matrix<double> mag = detail::sst_magnitudes(s);
    return detail::extract_ridge_from(mag, lambda, opts);
}

/// Peel-and-repeat extraction: after each ridge, the bins within
/// bins[n]*(1 +- band_frac) are zeroed before the next pass. Returns the
/// ridges found (possibly fewer than k), sorted by mean frequency ascending.
inline std::vector<RidgeCurve> extract_k_ridges(const SstField& s, std::size_t k, double lambda,
                                                double band_frac, const RidgeOptions& opts = {}) {
    if (k < 1) throw std::invalid_argument("extract_k_ridges: k must be >= 1");
    Matrix<double> mag = detail::sst_magnitudes(s);
    const std::size_t np = mag.rows(), nb = mag.cols();
    std::vector<RidgeCurve> out;
    for (std::size_t pass = 0; pass < k; ++pass) {
        double remaining = 0.0;
        const std::size_t c0 = (opts.min_bin >= 1 ? opts.min_bin : 1) - 1;
        for (std::size_t n = 0; n < np; ++n)
            for (std::size_t c = c0; c < nb; ++c) remaining += mag(n, c);
        if (!(remaining > 0.0)) break;  // fewer than k ridges carry mass
        RidgeCurve r = detail::extract_ridge_from(mag, lambda, opts);
        out.push_back(r);
        for (std::size_t n = 0; n < np; ++n) {
            double b = r.bins[n];
            auto lo = static_cast<std::size_t>(std::max(0.0, std::floor(b * (1.0 - band_frac)) - 1.0));
            auto hi = static_cast<std::size_t>(std::min<double>(static_cast<double>(nb), std::ceil(b * (1.0 + band_frac))));
            for (std::size_t c = lo; c < hi; ++c) mag(n, c) = 0.0;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const RidgeCurve& a, const RidgeCurve& b) { return a.mean_bin() < b.mean_bin(); });
    return out;
}

/// Instantaneous-frequency estimate per time sample: bins[n] * delta_xi.
inline std::vector<double> if_from_ridge(const RidgeCurve& ridge, const FrequencyGrid& freq) {
    std::vector<double> out(ridge.bins.size());
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = static_cast<double>(ridge.bins[n]) * freq.delta_xi;
    return out;
}

}  // namespace sst
