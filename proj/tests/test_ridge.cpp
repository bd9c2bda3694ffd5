#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sst/ridge.hpp"
#include "sst/rng.hpp"
#include "sst/selftest.hpp"

using Catch::Approx;
using namespace sst;

namespace {

SstField field_from(const Matrix<double>& mag, double delta_xi = 0.1) {
    SstField s;
    s.freq.delta_xi = delta_xi;
    s.freq.n_bins = mag.cols();
    s.s = Matrix<cplx>(mag.rows(), mag.cols());
    for (std::size_t i = 0; i < mag.data().size(); ++i) s.s.data()[i] = cplx(mag.data()[i], 0.0);
    return s;
}

SstField tone_sst(double freq_val, std::size_t n, double tau) {
    std::vector<double> x(n);
    for (std::size_t l = 0; l < n; ++l) x[l] = std::cos(2.0 * M_PI * freq_val * (l + 1) * tau);
    MotherWavelet w = MotherWavelet::make(0.3);
    ScaleGrid g = ScaleGrid::dyadic(n, tau, 32, 0.3);
    CwtField f = cwt_forward(x, tau, g, w);
    FrequencyGrid fg = FrequencyGrid::make(n, tau);
    return synchrosqueeze(f, reassignment(f), 0.0, fg);
}

}  // namespace

TEST_CASE("lambda = 0 reduces to the per-column argmax") {
    Philox rng(1, 0);
    Matrix<double> mag(20, 12);
    for (auto& v : mag.data()) v = rng.uniform();
    RidgeOptions opts;
    opts.window = 12;  // full window so every column is reachable
    RidgeCurve r = detail::extract_ridge_from(mag, 0.0, opts);
    for (std::size_t n = 0; n < 20; ++n) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < 12; ++c)
            if (mag(n, c) > mag(n, best)) best = c;
        REQUIRE(r.bins[n] == best + 1);
    }
}

TEST_CASE("pure tone yields the constant ridge at its bin for any lambda") {
    SstField s = tone_sst(1.0, 512, 1.0 / 64.0);
    auto j0 = static_cast<std::uint32_t>(std::llround(1.0 / s.freq.delta_xi));
    for (double lam : {0.0, 0.5, 5.0, 50.0}) {
        RidgeCurve r = extract_ridge(s, lam);
        for (std::size_t n = 0; n < r.bins.size(); ++n) REQUIRE(r.bins[n] == j0);
    }
}

TEST_CASE("DP equals exhaustive enumeration on random 8x6 grids") {
    auto res = selftest::check_dp_exhaustive(100);
    INFO(res.detail);
    CHECK(res.pass);
}

TEST_CASE("random 8x6 grid at lambda = 0.5 matches brute force (spot check)") {
    Philox rng(42, 0);
    Matrix<double> mag(8, 6);
    for (auto& v : mag.data()) v = rng.uniform();
    RidgeOptions opts;
    opts.window = 6;
    RidgeCurve dp = detail::extract_ridge_from(mag, 0.5, opts);
    auto brute = selftest::detail::ridge_brute_force(mag, 0.5);
    CHECK(dp.bins == brute);
}

TEST_CASE("all-zero matrix is rejected") {
    Matrix<double> mag(4, 4, 0.0);
    RidgeOptions opts;
    CHECK_THROWS_AS(detail::extract_ridge_from(mag, 1.0, opts), std::invalid_argument);
}

TEST_CASE("total squared jump is non-increasing in lambda") {
    Philox rng(7, 0);
    for (int trial = 0; trial < 5; ++trial) {
        Matrix<double> mag(64, 24);
        for (auto& v : mag.data()) v = rng.uniform();
        RidgeOptions opts;
        opts.window = 24;
        double prev = -1.0;
        bool first = true;
        for (double lam : {0.0, 0.05, 0.2, 1.0, 5.0, 25.0}) {
            RidgeCurve r = detail::extract_ridge_from(mag, lam, opts);
            double jumps = 0.0;
            for (std::size_t n = 1; n < r.bins.size(); ++n) {
                double d = static_cast<double>(r.bins[n]) - static_cast<double>(r.bins[n - 1]);
                jumps += d * d;
            }
            if (!first) REQUIRE(jumps <= prev + 1e-12);
            prev = jumps;
            first = false;
        }
    }
}

TEST_CASE("scaling the matrix leaves the ridge unchanged") {
    Philox rng(9, 0);
    Matrix<double> mag(32, 16);
    for (auto& v : mag.data()) v = rng.uniform();
    SstField a = field_from(mag);
    Matrix<double> scaled = mag;
    for (auto& v : scaled.data()) v *= 137.0;
    SstField b = field_from(scaled);
    RidgeCurve ra = extract_ridge(a, 0.7);
    RidgeCurve rb = extract_ridge(b, 0.7);
    CHECK(ra.bins == rb.bins);
}

TEST_CASE("ties break toward the lower bin index") {
    Matrix<double> mag(3, 5, 1.0);  // completely flat
    RidgeOptions opts;
    opts.window = 5;
    RidgeCurve r = detail::extract_ridge_from(mag, 0.0, opts);
    for (auto b : r.bins) REQUIRE(b == 1);
    RidgeCurve r2 = detail::extract_ridge_from(mag, 2.0, opts);
    for (auto b : r2.bins) REQUIRE(b == 1);
}

TEST_CASE("two tones produce two constant ridges, low frequency first") {
    const double tau = 0.01;
    const std::size_t n = 2048;
    std::vector<double> x(n);
    for (std::size_t l = 0; l < n; ++l) {
        double t = (l + 1) * tau;
        x[l] = 2.5 * std::cos(2.0 * M_PI * t) + 3.0 * std::cos(2.0 * M_PI * M_PI * t);
    }
    MotherWavelet w = MotherWavelet::make(0.3);
    ScaleGrid g = ScaleGrid::dyadic(n, tau, 32, 0.3);
    CwtField f = cwt_forward(x, tau, g, w);
    FrequencyGrid fg = FrequencyGrid::make(n, tau);
    SstField s = synchrosqueeze(f, reassignment(f), 0.0, fg);
    auto ridges = extract_k_ridges(s, 2, 30.0, 0.45);
    REQUIRE(ridges.size() == 2);
    auto j1 = static_cast<double>(std::llround(1.0 / fg.delta_xi));
    auto j2 = static_cast<double>(std::llround(M_PI / fg.delta_xi));
    for (std::size_t nn = 100; nn < n - 100; ++nn) {
        REQUIRE(std::abs(static_cast<double>(ridges[0].bins[nn]) - j1) <= 1.0);
        REQUIRE(std::abs(static_cast<double>(ridges[1].bins[nn]) - j2) <= 1.0);
    }
}

TEST_CASE("k = 1 equals plain extraction") {
    SstField s = tone_sst(1.0, 256, 1.0 / 32.0);
    RidgeCurve single = extract_ridge(s, 2.0);
    auto list = extract_k_ridges(s, 1, 2.0, 0.3);
    REQUIRE(list.size() == 1);
    CHECK(list[0].bins == single.bins);
}

TEST_CASE("asking for more ridges than exist reports those found") {
    Matrix<double> mag(16, 40, 0.0);
    for (std::size_t n = 0; n < 16; ++n) mag(n, 19) = 1.0;  // one ridge only
    SstField s = field_from(mag);
    auto list = extract_k_ridges(s, 3, 1.0, 0.3);
    CHECK(list.size() >= 1);
    CHECK(list.size() < 3);
    for (auto b : list[0].bins) CHECK(b == 20);
}

TEST_CASE("if_from_ridge converts bins to frequencies") {
    FrequencyGrid fg;
    fg.delta_xi = 0.25;
    fg.n_bins = 100;
    RidgeCurve r;
    r.bins.assign(5, 8);
    auto iff = if_from_ridge(r, fg);
    for (double v : iff) CHECK(v == Approx(2.0));
}

TEST_CASE("tone IF estimate is within one bin of the true frequency") {
    const double tau = 0.01;
    const std::size_t n = 1024;  // N' tau = 10.24
    SstField s = tone_sst(1.0, n, tau);
    RidgeCurve r = extract_ridge(s, 1.0);
    auto iff = if_from_ridge(r, s.freq);
    for (std::size_t i = 100; i < n - 100; ++i) REQUIRE(std::abs(iff[i] - 1.0) <= 1.0 / 10.24);
}
