#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sst/noise.hpp"
#include "sst/rng.hpp"
#include "sst/selftest.hpp"
#include "sst/sst.hpp"

using Catch::Approx;
using namespace sst;

namespace {

CwtField tone_field(double amplitude, double freq, std::size_t n, double tau) {
    std::vector<double> x(n);
    for (std::size_t l = 0; l < n; ++l)
        x[l] = amplitude * std::cos(2.0 * M_PI * freq * (l + 1) * tau);
    MotherWavelet w = MotherWavelet::make(0.3);
    ScaleGrid g = ScaleGrid::dyadic(n, tau, 32, 0.3);
    CwtField f = cwt_forward(x, tau, g, w);
    f.n_original = n;
    return f;
}

}  // namespace

TEST_CASE("frequency grid covers [1/(N'tau), Nyquist)") {
    FrequencyGrid g = FrequencyGrid::make(2048, 0.01);
    CHECK(g.delta_xi == Approx(1.0 / 20.48));
    CHECK(g.n_bins == 1023);
    CHECK(g.bin_freq(1) == Approx(g.delta_xi));
    CHECK(g.bin_freq(g.n_bins) < 50.0);
}

TEST_CASE("pure tone: omega is the tone frequency wherever defined") {
    auto r = selftest::check_tone_omega();
    INFO(r.detail);
    CHECK(r.pass);
}

TEST_CASE("zero cells carry the undefined sentinel") {
    CwtField f = tone_field(1.0, 1.0, 512, 1.0 / 64.0);
    Matrix<double> om = reassignment(f);
    // rows far from the tone band have |w| ~ 0: sentinel
    std::size_t dead = 0, live = 0;
    for (std::size_t i = 0; i < f.w.rows(); ++i)
        for (std::size_t n = 0; n < f.w.cols(); ++n)
            (omega_defined(om(i, n)) ? live : dead)++;
    CHECK(dead > 0);
    CHECK(live > 0);
}

TEST_CASE("two tones separate into their scale bands") {
    const double tau = 0.01;
    const std::size_t np = 2048;
    std::vector<double> x(np);
    for (std::size_t l = 0; l < np; ++l) {
        double t = (l + 1) * tau;
        x[l] = 2.5 * std::cos(2.0 * M_PI * t) + 3.0 * std::cos(2.0 * M_PI * M_PI * t);
    }
    MotherWavelet w = MotherWavelet::make(0.3);
    ScaleGrid g = ScaleGrid::dyadic(np, tau, 32, 0.3);
    CwtField f = cwt_forward(x, tau, g, w);
    Matrix<double> om = reassignment(f);
    double mx = 0.0;
    for (const auto& v : f.w.data()) mx = std::max(mx, std::abs(v));
    FrequencyGrid freq = FrequencyGrid::make(np, tau);
    for (std::size_t i = 0; i < g.size(); ++i) {
        double a = g.scales[i];
        for (std::size_t n = 256; n < np - 256; n += 131) {
            if (std::abs(f.w(i, n)) < 0.25 * mx) continue;
            double target = (std::abs(a - 1.0) < std::abs(a - 1.0 / M_PI)) ? 1.0 : M_PI;
            REQUIRE(std::abs(om(i, n) - target) < freq.delta_xi);
        }
    }
}

TEST_CASE("default threshold is zero for a zero field and deterministic") {
    std::vector<double> x(512, 0.0);
    MotherWavelet w = MotherWavelet::make(0.3);
    ScaleGrid g = ScaleGrid::dyadic(512, 0.01, 32, 0.3);
    CwtField f = cwt_forward(x, 0.01, g, w);
    CHECK(default_threshold(f) == 0.0);
    CwtField f2 = cwt_forward(x, 0.01, g, w);
    CHECK(default_threshold(f) == default_threshold(f2));
}

TEST_CASE("default threshold sits near the Monte-Carlo tail of noise |w|") {
    // For unit-variance white noise, the auto threshold (kappa = 1) should be
    // within a factor 2 of the 99th percentile of the covered-octave |w|.
    const std::size_t n = 1024;
    const double tau = 0.01;
    MotherWavelet w = MotherWavelet::make(0.3);
    ScaleGrid g = ScaleGrid::dyadic(n, tau, 32, 0.3);
    std::vector<double> oct_mags;
    double thresh_sum = 0.0;
    const int reps = 100;
    for (int rep = 0; rep < reps; ++rep) {
        Philox rng(1000, static_cast<std::uint64_t>(rep));
        std::vector<double> x(n);
        for (auto& v : x) v = rng.gaussian();
        CwtField f = cwt_forward(x, tau, g, w);
        thresh_sum += default_threshold(f, 1.0);
        double a_cov = 2.0 * tau * 1.3;
        std::size_t first = 0;
        while (g.scales[first] < a_cov) ++first;
        for (std::size_t i = first; i < g.size() && g.scales[i] < 2.0 * g.scales[first]; ++i)
            for (std::size_t nn = 0; nn < n; nn += 7) oct_mags.push_back(std::abs(f.w(i, nn)));
    }
    std::sort(oct_mags.begin(), oct_mags.end());
    double p99 = oct_mags[static_cast<std::size_t>(0.99 * (oct_mags.size() - 1))];
    double thresh = thresh_sum / reps;
    CHECK(thresh > 0.5 * p99);
    CHECK(thresh < 2.0 * p99);
}

TEST_CASE("squeezing a zero field gives a zero matrix") {
    std::vector<double> x(256, 0.0);
    MotherWavelet w = MotherWavelet::make(0.3);
    ScaleGrid g = ScaleGrid::dyadic(256, 0.01, 16, 0.3);
    CwtField f = cwt_forward(x, 0.01, g, w);
    FrequencyGrid freq = FrequencyGrid::make(256, 0.01);
    SstField s = synchrosqueeze(f, reassignment(f), 0.0, freq);
    for (const auto& v : s.s.data()) REQUIRE(v == cplx(0.0, 0.0));
}

TEST_CASE("pure tone concentrates into the bin containing its frequency") {
    const double tau = 1.0 / 128.0;
    const std::size_t n = 1024;
    CwtField f = tone_field(1.0, 1.0, n, tau);
    FrequencyGrid freq = FrequencyGrid::make(n, tau);
    SstField s = synchrosqueeze(f, reassignment(f), 0.0, freq);
    auto j0 = static_cast<std::size_t>(std::llround(1.0 / freq.delta_xi));
    for (std::size_t nn = 100; nn < n - 100; nn += 53) {
        double peak = std::abs(s.s(nn, j0 - 1));
        REQUIRE(peak > 0.0);
        for (std::size_t c = 0; c < freq.n_bins; ++c) {
            if (c == j0 - 1) continue;
            REQUIRE(std::abs(s.s(nn, c)) < 1e-6 * peak);
        }
    }
}

TEST_CASE("pure-tone sharpness: 99 percent of column mass within one bin") {
    const double tau = 1.0 / 128.0;
    const std::size_t n = 1024;
    CwtField f = tone_field(1.0, 1.0, n, tau);
    FrequencyGrid freq = FrequencyGrid::make(n, tau);
    SstField s = synchrosqueeze(f, reassignment(f), 0.0, freq);
    auto j0 = static_cast<std::size_t>(std::llround(1.0 / freq.delta_xi));
    for (std::size_t nn = 64; nn < n - 64; nn += 29) {
        double total = 0.0, near = 0.0;
        for (std::size_t c = 0; c < freq.n_bins; ++c) {
            double m = std::abs(s.s(nn, c));
            total += m;
            if (c + 1 >= j0 - 1 && c + 1 <= j0 + 1) near += m;
        }
        REQUIRE(near >= 0.99 * total);
    }
}

TEST_CASE("mass conservation: squeezing relocates, never rescales") {
    const double tau = 0.01;
    const std::size_t n = 512;
    Philox rng(77, 0);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.gaussian();
    MotherWavelet w = MotherWavelet::make(0.3);
    ScaleGrid g = ScaleGrid::dyadic(n, tau, 32, 0.3);
    CwtField f = cwt_forward(x, tau, g, w);
    Matrix<double> om = reassignment(f);
    FrequencyGrid freq = FrequencyGrid::make(n, tau);
    double gamma = default_threshold(f, 0.5);
    SstField s = synchrosqueeze(f, om, gamma, freq);
    for (std::size_t nn = 0; nn < n; nn += 37) {
        cplx from_s(0.0, 0.0);
        for (std::size_t c = 0; c < freq.n_bins; ++c) from_s += s.s(nn, c);
        cplx from_w(0.0, 0.0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (!omega_defined(om(i, nn))) continue;
            if (std::abs(f.w(i, nn)) < gamma) continue;
            auto j = static_cast<long long>(std::llround(om(i, nn) / freq.delta_xi));
            if (j < 1 || j > static_cast<long long>(freq.n_bins)) continue;
            from_w += f.w(i, nn) * g.quad_weight(i);
        }
        REQUIRE(std::abs(from_s - from_w) <= 1e-12 * std::max(1.0, std::abs(from_w)));
    }
}

TEST_CASE("raising the threshold never adds nonzero cells") {
    const double tau = 0.01;
    const std::size_t n = 512;
    Philox rng(78, 0);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.gaussian();
    MotherWavelet w = MotherWavelet::make(0.3);
    ScaleGrid g = ScaleGrid::dyadic(n, tau, 32, 0.3);
    CwtField f = cwt_forward(x, tau, g, w);
    Matrix<double> om = reassignment(f);
    FrequencyGrid freq = FrequencyGrid::make(n, tau);
    SstField lo = synchrosqueeze(f, om, 0.01, freq);
    SstField hi = synchrosqueeze(f, om, 0.05, freq);
    for (std::size_t i = 0; i < lo.s.data().size(); ++i) {
        if (lo.s.data()[i] == cplx(0.0, 0.0)) REQUIRE(hi.s.data()[i] == cplx(0.0, 0.0));
    }
}

TEST_CASE("tone reconstruction through the squeezed field recovers amplitude") {
    const double tau = 1.0 / 128.0;
    const std::size_t n = 1024;
    const double amp = 2.5;
    CwtField f = tone_field(amp, 1.0, n, tau);
    FrequencyGrid freq = FrequencyGrid::make(n, tau);
    SstField s = synchrosqueeze(f, reassignment(f), 0.0, freq);
    double r_psi = f.wavelet.r_psi;
    auto lo = static_cast<std::size_t>(std::ceil(0.7 / freq.delta_xi));
    auto hi = static_cast<std::size_t>(std::floor(1.3 / freq.delta_xi));
    double worst = 0.0;
    for (std::size_t nn = 0; nn < n; nn += 13) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = lo; j <= hi; ++j) acc += s.s(nn, j - 1);
        double rec = (2.0 / r_psi * acc).real();
        double truth = amp * std::cos(2.0 * M_PI * (nn + 1) * tau);
        worst = std::max(worst, std::abs(rec - truth));
    }
    CHECK(worst < 0.01 * amp);
}
