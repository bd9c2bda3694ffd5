#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sst/noise.hpp"
#include "sst/signal.hpp"
#include "sst/synth.hpp"

namespace sst::scenario {

/// A synthesized observation with its per-part ground truth on the same grid.
struct ScenarioData {
    SampledSignal y;
    std::vector<double> comp_a, comp_b;  // seasonal components, low frequency first
    std::vector<double> trend;
    std::vector<double> noise;  // sigma0 * X_k (zeros for clean scenarios)
    std::string comp_a_name = "s21", comp_b_name = "s22";
    std::string name;
};

struct ScenarioSpec {
    bool uses_s1 = false;          // s1 components instead of s2
    synth::TrendKind trend = synth::TrendKind::T1;
    int noise_kind = 0;            // 0 = clean, 1..5 = X1..X5
    double sigma0 = 0.0;
    bool bursts = false;
    std::string name;
};

/// Accepted names: "Y0", "clean_s2_T1", "clean_s2_T2", "Y_<j>_<k>_<s0>"
/// (e.g. "Y_1_2_1", "Y_2_3_0.5"); suffix "_O" adds the burst peaks.
inline ScenarioSpec parse_scenario(std::string name) {
    ScenarioSpec sp;
    sp.name = name;
    if (name.size() > 2 && name.substr(name.size() - 2) == "_O") {
        sp.bursts = true;
        name = name.substr(0, name.size() - 2);
    }
    if (name == "Y0") {
        sp.uses_s1 = true;
        sp.noise_kind = 1;
        sp.sigma0 = 1.0;
        return sp;
    }
    if (name == "clean_s2_T1") return sp;
    if (name == "clean_s2_T2") {
        sp.trend = synth::TrendKind::T2;
        return sp;
    }
    if (name.rfind("Y_", 0) == 0) {
        std::string rest = name.substr(2);
        auto p1 = rest.find('_');
        auto p2 = rest.find('_', p1 == std::string::npos ? p1 : p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos)
            throw std::invalid_argument("unknown scenario: " + sp.name);
        int j = std::stoi(rest.substr(0, p1));
        int k = std::stoi(rest.substr(p1 + 1, p2 - p1 - 1));
        double s0 = std::stod(rest.substr(p2 + 1));
        if (j != 1 && j != 2) throw std::invalid_argument("scenario: trend index must be 1 or 2");
        if (k < 1 || k > 5) throw std::invalid_argument("scenario: noise kind must be 1..5");
        sp.trend = j == 1 ? synth::TrendKind::T1 : synth::TrendKind::T2;
        sp.noise_kind = k;
        sp.sigma0 = s0;
        return sp;
    }
    throw std::invalid_argument("unknown scenario: " + sp.name);
}

inline ScenarioData build_scenario(const std::string& name, std::uint64_t seed, std::size_t n = 1000,
                                   double tau = 0.01) {
    ScenarioSpec sp = parse_scenario(name);
    ScenarioData d;
    d.name = sp.name;
    auto [ca, cb] = sp.uses_s1 ? synth::gen_s1() : synth::gen_s2();
    if (sp.uses_s1) {
        d.comp_a_name = "s11";
        d.comp_b_name = "s12";
    }
    auto trend_fn = synth::gen_trend(sp.trend);
    d.comp_a.resize(n);
    d.comp_b.resize(n);
    d.trend.resize(n);
    d.noise.assign(n, 0.0);
    if (sp.noise_kind > 0) {
        auto x = noise::make_noise(static_cast<noise::NoiseKind>(sp.noise_kind - 1), n, tau, seed);
        for (std::size_t l = 0; l < n; ++l) d.noise[l] = sp.sigma0 * x.values[l];
    }
    d.y.tau = tau;
    d.y.values.resize(n);
    for (std::size_t l = 0; l < n; ++l) {
        double t = static_cast<double>(l + 1) * tau;
        d.comp_a[l] = ca.eval(t);
        d.comp_b[l] = cb.eval(t);
        d.trend[l] = trend_fn(t);
        d.y.values[l] = d.comp_a[l] + d.comp_b[l] + d.trend[l] + d.noise[l];
    }
    if (sp.bursts) {
        auto o = synth::gen_bursts(n, tau);
        for (std::size_t l = 0; l < n; ++l) d.y.values[l] += o.values[l];
    }
    return d;
}

/// Truth restricted to the first m samples.
inline ScenarioData restrict_scenario(const ScenarioData& d, std::size_t m) {
    ScenarioData r = d;
    r.y.values.resize(m);
    r.comp_a.resize(m);
    r.comp_b.resize(m);
    r.trend.resize(m);
    r.noise.resize(m);
    return r;
}

}  // namespace sst::scenario
