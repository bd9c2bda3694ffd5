#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sst/eval.hpp"
#include "sst/fft.hpp"
#include "sst/noise.hpp"
#include "sst/reconstruct.hpp"
#include "sst/ridge.hpp"
#include "sst/rng.hpp"
#include "sst/sst.hpp"

namespace sst::selftest {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

/// Time-domain wavelet by quadrature of the spectral bump; the independent
/// oracle for the FFT path.
inline cplx psi_time(double u, double delta, int intervals = 2048) {
    double a = 1.0 - delta, b = 1.0 + delta;
    double h = (b - a) / intervals;
    cplx acc(0.0, 0.0);
    for (int i = 1; i < intervals; ++i) {
        double xi = a + h * i;
        double w = (i % 2 == 1) ? 4.0 : 2.0;
        acc += w * bump_hat(xi, delta) * std::polar(1.0, 2.0 * M_PI * xi * u);
    }
    return acc * (h / 3.0);
}

/// Direct evaluation of the discretized CWT sum on the periodized signal.
inline cplx cwt_direct(const std::vector<double>& x, double tau, double a, std::size_t n,
                       double delta) {
    const std::size_t N = x.size();
    const double period = static_cast<double>(N) * tau;
    cplx acc(0.0, 0.0);
    for (std::size_t m = 0; m < N; ++m) {
        for (int r = -4; r <= 4; ++r) {
            double u = (static_cast<double>(m) - static_cast<double>(n)) * tau + r * period;
            acc += x[m] * std::conj(psi_time(u / a, delta));
        }
    }
    return acc * (tau / std::sqrt(a));
}

/// Exhaustive search over all curves for the ridge functional.
inline std::vector<std::uint32_t> ridge_brute_force(const Matrix<double>& mag, double lambda) {
    const std::size_t np = mag.rows(), nb = mag.cols();
    double total = 0.0;
    for (double v : mag.data()) total += v;
    const double eps = 1e-16 * total;
    std::vector<std::size_t> cur(np, 0), best(np, 0);
    double best_score = -std::numeric_limits<double>::infinity();
    while (true) {
        double sc = 0.0;
        for (std::size_t n = 0; n < np; ++n) {
            sc += std::log(std::max(mag(n, cur[n]), eps) / total);
            if (n > 0) {
                double d = static_cast<double>(cur[n]) - static_cast<double>(cur[n - 1]);
                sc -= lambda * d * d;
            }
        }
        if (sc > best_score) {
            best_score = sc;
            best = cur;
        }
        std::size_t i = 0;
        while (i < np && ++cur[i] == nb) {
            cur[i] = 0;
            ++i;
        }
        if (i == np) break;
    }
    std::vector<std::uint32_t> out(np);
    for (std::size_t n = 0; n < np; ++n) out[n] = static_cast<std::uint32_t>(best[n] + 1);
    return out;
}

inline CwtField tone_field(double amplitude, double freq, std::size_t n, double tau, double delta) {
    SampledSignal x;
    x.tau = tau;
    x.values.resize(n);
    for (std::size_t l = 0; l < n; ++l)
        x.values[l] = amplitude * std::cos(2.0 * M_PI * freq * x.time_at(l));
    auto [padded, left] = pad_reflect(x.values, n);  // length already a power of two
    MotherWavelet w = MotherWavelet::make(delta);
    ScaleGrid grid = ScaleGrid::dyadic(n, tau, 32, delta);
    CwtField f = cwt_forward(padded, tau, grid, w);
    f.n_original = n;
    f.left_pad = left;
    return f;
}

}  // namespace detail

/// Reassignment exactness on a pure tone: omega equals the tone frequency
/// wherever the coefficient is significant.
inline CheckResult check_tone_omega() {
    CheckResult r{"pure-tone omega exactness", false, ""};
    const double tau = 1.0 / 128.0;
    CwtField f = detail::tone_field(1.0, 1.0, 1024, tau, 0.3);
    Matrix<double> om = reassignment(f);
    double mx = 0.0;
    for (const auto& v : f.w.data()) mx = std::max(mx, std::abs(v));
    double worst = 0.0;
    for (std::size_t i = 0; i < f.w.rows(); ++i)
        for (std::size_t n = 0; n < f.w.cols(); ++n)
            if (std::abs(f.w(i, n)) > 0.1 * mx) worst = std::max(worst, std::abs(om(i, n) - 1.0));
    r.pass = worst < 1e-6;
    std::ostringstream os;
    os << "max |omega-1| = " << worst << " (tolerance 1e-6)";
    r.detail = os.str();
    return r;
}

/// Band reconstruction of a 2.5-amplitude tone recovers the amplitude
/// within 1 percent at every sample.
inline CheckResult check_tone_amplitude() {
    CheckResult r{"pure-tone amplitude recovery", false, ""};
    const double tau = 1.0 / 128.0;
    const std::size_t n = 1024;
    CwtField f = detail::tone_field(2.5, 1.0, n, tau, 0.3);
    FrequencyGrid freq = FrequencyGrid::make(n, tau);
    RidgeCurve ridge;
    ridge.bins.assign(n, static_cast<std::uint32_t>(std::llround(1.0 / freq.delta_xi)));
    auto fc = component_reconstruct(f, ridge, freq, 0.0);
    double worst = 0.0;
    for (const auto& v : fc) worst = std::max(worst, std::abs(std::abs(v) - 2.5) / 2.5);
    r.pass = worst < 0.01;
    std::ostringstream os;
    os << "max relative amplitude error = " << worst << " (tolerance 0.01)";
    r.detail = os.str();
    return r;
}

/// Windowed-free DP equals exhaustive enumeration on random 8x6 grids.
inline CheckResult check_dp_exhaustive(int seeds = 100) {
    CheckResult r{"ridge DP vs exhaustive enumeration", false, ""};
    int mismatches = 0;
    for (int s = 0; s < seeds; ++s) {
        Philox rng(12345, static_cast<std::uint64_t>(s));
        Matrix<double> mag(8, 6);
        for (auto& v : mag.data()) v = rng.uniform();
        auto brute = detail::ridge_brute_force(mag, 0.5);
        RidgeOptions opts;
        opts.window = 6;  // full window
        RidgeCurve dp = sst::detail::extract_ridge_from(mag, 0.5, opts);
        if (dp.bins != brute) ++mismatches;
    }
    r.pass = mismatches == 0;
    std::ostringstream os;
    os << mismatches << " mismatches over " << seeds << " random 8x6 grids";
    r.detail = os.str();
    return r;
}

/// FFT-based CWT equals the direct discretized sum to 1e-8 relative on a
/// random length-256 signal.
inline CheckResult check_fft_vs_direct() {
    CheckResult r{"FFT vs direct CWT", false, ""};
    const std::size_t n = 256;
    const double tau = 1.0 / 32.0, delta = 0.3;
    Philox rng(99, 0);
    std::vector<double> x(n);
    for (auto& v : x) v = 2.0 * rng.uniform() - 1.0;
    MotherWavelet w = MotherWavelet::make(delta);
    ScaleGrid grid = ScaleGrid::dyadic(n, tau, 32, delta);
    CwtField f = cwt_forward(x, tau, grid, w);
    // probe a few scales across the grid at a few time points
    double worst = 0.0, ref = 0.0;
    for (const auto& v : f.w.data()) ref = std::max(ref, std::abs(v));
    for (std::size_t i : {std::size_t{0}, grid.size() / 2, grid.size() - 1}) {
        for (std::size_t nn : {std::size_t{0}, std::size_t{64}, std::size_t{128}, std::size_t{200}}) {
            cplx d = detail::cwt_direct(x, tau, grid.scales[i], nn, delta);
            worst = std::max(worst, std::abs(d - f.w(i, nn)));
        }
    }
    r.pass = worst / ref < 1e-8;
    std::ostringstream os;
    os << "max relative deviation = " << worst / ref << " (tolerance 1e-8)";
    r.detail = os.str();
    return r;
}

/// Averaged, frequency-smoothed periodogram of simulated ARMA noise matches
/// the spectral density with relative L2 error below 5 percent.
inline CheckResult check_arma_spectrum() {
    CheckResult r{"ARMA periodogram vs spectral density", false, ""};
    const std::size_t n = 1 << 14;
    const int reps = 200, block = 64;
    noise::ArmaSpec spec = noise::arma1_spec(noise::Innovation::StudentT4);
    const double sigma2 = 2.0;  // raw t4 innovation variance
    std::vector<double> avg(n, 0.0);
    for (int rep = 0; rep < reps; ++rep) {
        auto x = noise::simulate_arma(spec, n, 777, static_cast<std::uint64_t>(rep));
        auto X = fft_forward(x);
        for (std::size_t j = 0; j < n; ++j)
            avg[j] += std::norm(X[j]) / (2.0 * M_PI * static_cast<double>(n));
    }
    for (auto& v : avg) v /= reps;
    double num = 0.0, den = 0.0;
    for (std::size_t j0 = 0; j0 + block <= n / 2; j0 += block) {
        double em = 0.0, fm = 0.0;
        for (std::size_t j = j0; j < j0 + block; ++j) {
            em += avg[j];
            fm += noise::arma_spectral_density(spec, 2.0 * M_PI * static_cast<double>(j) / n, sigma2);
        }
        em /= block;
        fm /= block;
        num += (em - fm) * (em - fm);
        den += fm * fm;
    }
    double rel = std::sqrt(num / den);
    r.pass = rel < 0.05;
    std::ostringstream os;
    os << "relative L2 error = " << rel << " (tolerance 0.05)";
    r.detail = os.str();
    return r;
}

/// y = sum components + trend + residual holds to machine precision.
inline CheckResult check_ledger_identity() {
    CheckResult r{"decomposition ledger identity", false, ""};
    scenario::ScenarioData data = scenario::build_scenario("Y_1_2_1", 3);
    AnalysisConfig cfg;
    Decomposition dec = decompose(data.y, cfg);
    double worst = 0.0, scale = 0.0;
    for (std::size_t l = 0; l < data.y.size(); ++l) {
        double acc = dec.trend[l] + dec.residual[l];
        for (const auto& c : dec.components) acc += c.series[l];
        worst = std::max(worst, std::abs(acc - data.y.values[l]));
        scale = std::max(scale, std::abs(data.y.values[l]));
    }
    r.pass = worst <= 1e-12 * scale;
    std::ostringstream os;
    os << "max |y - (sum+T+r)| = " << worst;
    r.detail = os.str();
    return r;
}

/// Hand-computed one-way ANOVA: groups {1,2,3,4} and {4,4,5,5} give
/// F = 8 and p = 0.0300197... on (1,6) degrees of freedom.
inline CheckResult check_f_test() {
    CheckResult r{"one-way F-test reference", false, ""};
    auto res = eval::f_test_oneway({{1, 2, 3, 4}, {4, 4, 5, 5}});
    double f_err = std::abs(res.f - 8.0);
    double p_err = std::abs(res.p - 0.030019745287544402);
    r.pass = f_err < 1e-12 && p_err < 1e-6;
    std::ostringstream os;
    os << "F = " << res.f << ", p = " << res.p << " (expect 8, 0.0300197)";
    r.detail = os.str();
    return r;
}

inline std::vector<CheckResult> run_all() {
    return {check_tone_omega(),  check_tone_amplitude(), check_dp_exhaustive(),
            check_fft_vs_direct(), check_arma_spectrum(),  check_ledger_identity(),
            check_f_test()};
}

}  // namespace sst::selftest
