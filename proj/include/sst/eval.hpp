#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sst/reconstruct.hpp"
#include "sst/scenario.hpp"
#include "sst/stats.hpp"

namespace sst::eval {

/// Relative root average square estimation error ||est - truth||_2 / ||truth||_2.
inline double rrase(const std::vector<double>& est, const std::vector<double>& truth) {
    if (est.size() != truth.size()) throw std::invalid_argument("rrase: length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        double d = est[i] - truth[i];
        num += d * d;
        den += truth[i] * truth[i];
    }
    if (!(den > 0.0)) throw std::invalid_argument("rrase: zero-norm reference");
    return std::sqrt(num / den);
}

/// Relative root average square difference; same formula with b as reference.
inline double rrasd(const std::vector<double>& a, const std::vector<double>& b) { return rrase(a, b); }

/// Per-window sample standard deviations over non-overlapping windows of the
/// given duration; the last partial window is dropped.
inline std::vector<double> sliding_if_std(const std::vector<double>& series, double tau,
                                          double window) {
    if (!(tau > 0.0)) throw std::invalid_argument("sliding_if_std: tau must be positive");
    auto w = static_cast<std::size_t>(std::llround(window / tau));
    if (w < 2) throw std::invalid_argument("sliding_if_std: window shorter than 2 samples");
    std::vector<double> out;
    for (std::size_t start = 0; start + w <= series.size(); start += w) {
        std::vector<double> chunk(series.begin() + start, series.begin() + start + w);
        out.push_back(stats::sample_sd(chunk));
    }
    return out;
}

struct FTestResult {
    double f = 0.0;
    double p = 1.0;
};

/// Classical one-way ANOVA F test with (k-1, N-k) degrees of freedom.
inline FTestResult f_test_oneway(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw std::invalid_argument("f_test_oneway: need at least 2 groups");
    std::size_t n_total = 0;
    double grand = 0.0;
    for (const auto& g : groups) {
        if (g.size() < 2) throw std::invalid_argument("f_test_oneway: each group needs >= 2 samples");
        for (double v : g) grand += v;
        n_total += g.size();
    }
    grand /= static_cast<double>(n_total);
    double ssb = 0.0, ssw = 0.0;
    for (const auto& g : groups) {
        double m = stats::mean(g);
        ssb += static_cast<double>(g.size()) * (m - grand) * (m - grand);
        for (double v : g) ssw += (v - m) * (v - m);
    }
    double d1 = static_cast<double>(groups.size() - 1);
    double d2 = static_cast<double>(n_total - groups.size());
    FTestResult r;
    if (ssw == 0.0) {
        if (ssb == 0.0) throw std::invalid_argument("f_test_oneway: degenerate groups (no variance at all)");
        r.f = std::numeric_limits<double>::infinity();
        r.p = 0.0;
        return r;
    }
    r.f = (ssb / d1) / (ssw / d2);
    r.p = stats::f_upper_tail(r.f, d1, d2);
    return r;
}

/// One replication row: RRASE of the two seasonal estimates, the trend and
/// the residual against their ground truths.
struct RepMetrics {
    double comp_a = 0.0, comp_b = 0.0, trend = 0.0, resid = 0.0;
    double rrasd_a = 0.0, rrasd_b = 0.0, rrasd_trend = 0.0, rrasd_resid = 0.0;  // sensitivity runs only
    double runtime_sec = 0.0;
    std::uint64_t seed = 0;
};

struct MetricReport {
    std::string scenario;
    std::vector<RepMetrics> reps;
    bool has_rrasd = false;

    std::vector<double> column(double RepMetrics::* field) const {
        std::vector<double> v;
        v.reserve(reps.size());
        for (const auto& r : reps) v.push_back(r.*field);
        return v;
    }
    double mean_of(double RepMetrics::* field) const { return stats::mean(column(field)); }
    double sd_of(double RepMetrics::* field) const { return stats::sample_sd(column(field)); }
};

namespace detail {

inline RepMetrics measure(const scenario::ScenarioData& data, const Decomposition& dec) {
    RepMetrics m;
    const std::size_t n = data.y.size();
    std::vector<double> zero(n, 0.0);
    const std::vector<double>& ea = dec.components.size() > 0 ? dec.components[0].series : zero;
    const std::vector<double>& eb = dec.components.size() > 1 ? dec.components[1].series : zero;
    m.comp_a = rrase(ea, data.comp_a);
    m.comp_b = rrase(eb, data.comp_b);
    m.trend = rrase(dec.trend, data.trend);
    bool noise_zero = true;
    for (double v : data.noise)
        if (v != 0.0) {
            noise_zero = false;
            break;
        }
    m.resid = noise_zero ? 0.0 : rrase(dec.residual, data.noise);
    return m;
}

}  // namespace detail

/// Runs `reps` replications of a scenario. With restrict_to > 0 each
/// replication also analyzes the series truncated to that many samples and
/// reports the RRASD between restricted and full estimates.
inline MetricReport run_scenario(const std::string& name, std::size_t reps, std::uint64_t seed0,
                                 const AnalysisConfig& cfg, std::size_t restrict_to = 0) {
    MetricReport rep;
    rep.scenario = name;
    rep.has_rrasd = restrict_to > 0;
    rep.reps.resize(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        std::uint64_t seed = seed0 + r;
        scenario::ScenarioData data = scenario::build_scenario(name, seed);
        Decomposition dec = decompose(data.y, cfg);
        RepMetrics m = detail::measure(data, dec);
        if (restrict_to > 0) {
            scenario::ScenarioData rd = scenario::restrict_scenario(data, restrict_to);
            Decomposition rdec = decompose(rd.y, cfg);
            RepMetrics rm = detail::measure(rd, rdec);
            m.comp_a = rm.comp_a;   // report the restricted-run RRASE
            m.comp_b = rm.comp_b;
            m.trend = rm.trend;
            m.resid = rm.resid;
            auto head = [&](const std::vector<double>& v) {
                return std::vector<double>(v.begin(), v.begin() + restrict_to);
            };
            std::vector<double> zero(restrict_to, 0.0);
            auto series_or_zero = [&](const Decomposition& d, std::size_t i) {
                return d.components.size() > i ? d.components[i].series : zero;
            };
            m.rrasd_a = rrasd(series_or_zero(rdec, 0), head(series_or_zero(dec, 0)));
            m.rrasd_b = rrasd(series_or_zero(rdec, 1), head(series_or_zero(dec, 1)));
            m.rrasd_trend = rrasd(rdec.trend, head(dec.trend));
            m.rrasd_resid = rrasd(rdec.residual, head(dec.residual));
        }
        m.seed = seed;
        m.runtime_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep.reps[r] = m;
    }
    return rep;
}

}  // namespace sst::eval
