#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sst/synth.hpp"

using Catch::Approx;
using namespace sst;

TEST_CASE("s1 components are the stated pure tones") {
    auto [a, b] = synth::gen_s1();
    CHECK(a.eval(0.0) == Approx(2.5));
    CHECK(b.inst_freq(0.37) == Approx(M_PI));
    CHECK(a.inst_freq(5.0) == 1.0);
    // s1(0.5) = 2.5 cos(pi) + 3 cos(pi^2), frozen from a high-precision evaluation
    CHECK(a.eval(0.5) + b.eval(0.5) == Approx(-5.2080560857992132).epsilon(1e-12));
}

TEST_CASE("s2 component amplitudes and frequencies") {
    auto [a, b] = synth::gen_s2();
    CHECK(a.inst_freq(0.0) == Approx(1.1));
    CHECK(b.am(7.6) == 2.0);
    CHECK(b.am(7.5) == 3.5);
    CHECK(b.inst_freq(10.0) == Approx(2.4821793351143154).epsilon(1e-12));
}

TEST_CASE("s2 instantaneous frequencies match differentiated phases") {
    auto [a, b] = synth::gen_s2();
    const double h = 1e-6;
    for (double t = 0.3; t < 10.0; t += 0.47) {
        double da = (a.phase(t + h) - a.phase(t - h)) / (2.0 * h);
        double db = (b.phase(t + h) - b.phase(t - h)) / (2.0 * h);
        CHECK(da == Approx(a.inst_freq(t)).epsilon(1e-6));
        CHECK(db == Approx(b.inst_freq(t)).epsilon(1e-6));
    }
}

TEST_CASE("s2 satisfies the separation premise on the sampled grid") {
    auto [a, b] = synth::gen_s2();
    for (int l = 1; l <= 1000; ++l) {
        double t = 0.01 * l;
        REQUIRE(b.inst_freq(t) > a.inst_freq(t));
    }
}

TEST_CASE("trend values") {
    auto t1 = synth::gen_trend(synth::TrendKind::T1);
    auto t2 = synth::gen_trend(synth::TrendKind::T2);
    CHECK(t1(0.0) == Approx(16.0));
    CHECK(t2(4.0) == Approx(18.0));
    // 10 exp(-16/6), frozen from a direct high-precision evaluation
    CHECK(t2(0.0) == Approx(0.69483451222801535).epsilon(1e-12));
}

TEST_CASE("sampling convention starts at t = tau") {
    auto s = sample([](double t) { return t; }, 0.01, 3, 0.0);
    REQUIRE(s.values.size() == 3);
    CHECK(s.values[0] == Approx(0.01));
    CHECK(s.values[1] == Approx(0.02));
    CHECK(s.values[2] == Approx(0.03));
}

TEST_CASE("sampling the s2 scenario gives N = 1000 points") {
    auto [a, b] = synth::gen_s2();
    auto s = sample([&](double t) { return a.eval(t) + b.eval(t); }, 0.01, 1000, 0.0);
    CHECK(s.values.size() == 1000);
}

TEST_CASE("sampling zero gives zeros and rejects non-finite values") {
    auto s = sample([](double) { return 0.0; }, 0.01, 5, 0.0);
    for (double v : s.values) CHECK(v == 0.0);
    CHECK_THROWS(sample([](double t) { return 1.0 / (t - 0.02); }, 0.01, 5, 0.0));
}

TEST_CASE("bursts sit at t = 4 and t = 7") {
    auto o = synth::gen_bursts(1000, 0.01);
    // sample index l holds t = (l+1) tau, so t = 4 is l = 399 (the paper's n = 400)
    CHECK(o.values[399] == 18.0);
    CHECK(o.time_at(399) == Approx(4.0));
    CHECK(o.values[699] == -20.0);
    CHECK(o.time_at(699) == Approx(7.0));
    double sum_abs = 0.0;
    for (double v : o.values) sum_abs += std::abs(v);
    CHECK(sum_abs == Approx(38.0));
}

TEST_CASE("bursts reject out-of-range indices") {
    CHECK_THROWS(synth::gen_bursts(500, 0.01));   // 7/tau = 700 > 500
    CHECK_THROWS(synth::gen_bursts(1000, 0.003));  // 4/tau not an integer
}
