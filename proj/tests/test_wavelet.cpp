#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sst/rng.hpp"
#include "sst/wavelet.hpp"

using Catch::Approx;

namespace {

/// Adaptive Simpson quadrature, the independent oracle for r_psi_constant.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double adaptive_quad(const std::function<double(double)>& f, double a, double b, double tol) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

TEST_CASE("bump peak is normalized to 1") {
    CHECK(sst::bump_hat(1.0, 0.3) == 1.0);
    CHECK(sst::bump_hat(1.0, 0.05) == 1.0);
}

TEST_CASE("bump vanishes outside the compact support") {
    CHECK(sst::bump_hat(1.3, 0.3) == 0.0);
    CHECK(sst::bump_hat(0.7, 0.3) == 0.0);
    CHECK(sst::bump_hat(-2.0, 0.3) == 0.0);
    sst::Philox rng(41, 0);
    for (int i = 0; i < 1000000; ++i) {
        double xi = 20.0 * rng.uniform() - 10.0;
        if (xi > 0.7 && xi < 1.3) continue;
        REQUIRE(sst::bump_hat(xi, 0.3) == 0.0);
    }
}

TEST_CASE("bump value halfway out the support") {
    // peak-1 normalization multiplies the raw bump exp(1/(u^2-1)) by e
    CHECK(sst::bump_hat(1.15, 0.3) == Approx(std::exp(-1.0 / 3.0)).epsilon(1e-12));
    CHECK(sst::bump_hat(1.15, 0.3) == Approx(0.71653131057378925).epsilon(1e-12));
}

TEST_CASE("bump is symmetric about the peak") {
    for (double x : {0.01, 0.1, 0.2, 0.29}) {
        CHECK(sst::bump_hat(1.0 + x, 0.3) == Approx(sst::bump_hat(1.0 - x, 0.3)).epsilon(1e-14));
    }
}

TEST_CASE("bump is non-increasing right of the peak") {
    double prev = sst::bump_hat(1.0, 0.3);
    for (int i = 1; i <= 300; ++i) {
        double v = sst::bump_hat(1.0 + 0.001 * i, 0.3);
        REQUIRE(v <= prev + 1e-15);
        prev = v;
    }
}

TEST_CASE("bump rejects bad delta") {
    CHECK_THROWS_AS(sst::bump_hat(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sst::bump_hat(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sst::bump_hat(1.0, -0.2), std::invalid_argument);
}

TEST_CASE("r_psi vanishes with the support") {
    CHECK(sst::r_psi_constant(1e-4) < 1e-3);
}

TEST_CASE("r_psi bounded by sup of integrand times support length") {
    double v = sst::r_psi_constant(0.3);
    CHECK(v > 0.0);
    CHECK(v < 2.0 * 0.3 * 1.0 / (1.0 - 0.3));
}

TEST_CASE("r_psi matches an adaptive quadrature oracle") {
    double oracle = adaptive_quad([](double z) { return sst::bump_hat(z, 0.3) / z; }, 0.7, 1.3, 1e-13);
    CHECK(sst::r_psi_constant(0.3) == Approx(oracle).epsilon(1e-9));
    // frozen high-precision value of the same integral
    CHECK(sst::r_psi_constant(0.3) == Approx(0.36738419642662547).epsilon(1e-9));
}

TEST_CASE("r_psi quadrature is converged at the default point count") {
    double a = sst::r_psi_constant(0.3, 4096);
    double b = sst::r_psi_constant(0.3, 8192);
    CHECK(std::abs(a - b) < 1e-10);
}

TEST_CASE("MotherWavelet bundles the derived constants") {
    auto w = sst::MotherWavelet::make(0.3);
    CHECK(w.normalization == 1.0);
    CHECK(w.hat(1.0) == 1.0);
    CHECK(w.r_psi == Approx(0.36738419642662547).epsilon(1e-9));
    CHECK(w.r_psi > 0.0);
}
