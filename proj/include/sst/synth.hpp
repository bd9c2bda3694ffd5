#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "sst/signal.hpp"

namespace sst::synth {

/// Two pure tones: 2.5 cos(2 pi t) and 3 cos(2 pi^2 t) = 3 cos(2 pi (pi t)).
inline std::pair<ImfComponent, ImfComponent> gen_s1() {
    ImfComponent a{[](double) { return 2.5; }, [](double t) { return t; }, [](double) { return 1.0; }};
    ImfComponent b{[](double) { return 3.0; }, [](double t) { return M_PI * t; }, [](double) { return M_PI; }};
    return {a, b};
}

/// Two modulated components:
///   A1(t) = 2 + 0.5 (1 + 0.1 cos t) arctan(t - 13),  phi1(t) = t + 0.1 sin t
///   A2(t) = 3.5 on [0, 7.5], 2 on (7.5, 10],         phi2(t) = 3.4 t - 0.02 t^2.3
inline std::pair<ImfComponent, ImfComponent> gen_s2() {
    ImfComponent a{
        [](double t) { return 2.0 + 0.5 * (1.0 + 0.1 * std::cos(t)) * std::atan(t - 13.0); },
        [](double t) { return t + 0.1 * std::sin(t); },
        [](double t) { return 1.0 + 0.1 * std::cos(t); }};
    ImfComponent b{
        [](double t) { return t <= 7.5 ? 3.5 : 2.0; },
        [](double t) { return 3.4 * t - 0.02 * std::pow(t, 2.3); },
        [](double t) { return 3.4 - 0.046 * std::pow(t, 1.3); }};
    return {a, b};
}

enum class TrendKind { T1, T2 };

inline std::function<double(double)> gen_trend(TrendKind which) {
    switch (which) {
        case TrendKind::T1:
            return [](double t) { return 8.0 * (1.0 / (1.0 + (t / 5.0) * (t / 5.0)) + std::exp(-t / 10.0)); };
        case TrendKind::T2:
            return [](double t) { return 2.0 * t + 10.0 * std::exp(-(t - 4.0) * (t - 4.0) / 6.0); };
    }
    throw std::invalid_argument("gen_trend: unknown kind");
}

/// Two deterministic delta peaks: +18 at t = 4 and -20 at t = 7.
inline SampledSignal gen_bursts(std::size_t n, double tau) {
    double i4 = 4.0 / tau, i7 = 7.0 / tau;
    auto n4 = static_cast<std::size_t>(std::llround(i4));
    auto n7 = static_cast<std::size_t>(std::llround(i7));
    if (std::abs(i4 - static_cast<double>(n4)) > 1e-9 || std::abs(i7 - static_cast<double>(n7)) > 1e-9)
        throw std::invalid_argument("gen_bursts: 4/tau and 7/tau must be integers");
    if (n4 < 1 || n4 > n || n7 < 1 || n7 > n) throw std::invalid_argument("gen_bursts: burst index out of range");
    SampledSignal s;
    s.tau = tau;
    s.values.assign(n, 0.0);
    s.values[n4 - 1] = 18.0;   // sample with t = n4*tau = 4
    s.values[n7 - 1] = -20.0;  // sample with t = 7
    return s;
}

}  // namespace sst::synth
