#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sst {

/// Uniformly sampled real series. Sample l holds the value at time
/// t0 + (l+1)*tau, i.e. the grid runs t = tau, 2*tau, ..., n*tau for t0 = 0.
struct SampledSignal {
    std::vector<double> values;
    double tau = 1.0;
    double t0 = 0.0;

    std::size_t size() const { return values.size(); }
    double time_at(std::size_t l) const { return t0 + static_cast<double>(l + 1) * tau; }
};

/// One oscillatory component A(t) cos(2*pi*phase(t)) with its analytic
/// instantaneous frequency phase'(t) (cycles per unit time).
struct ImfComponent {
    std::function<double(double)> am;
    std::function<double(double)> phase;
    std::function<double(double)> inst_freq;

    double eval(double t) const { return am(t) * std::cos(2.0 * M_PI * phase(t)); }
};

inline SampledSignal sample(const std::function<double(double)>& fn, double tau, std::size_t n,
                            double t0 = 0.0) {
    if (!(tau > 0.0)) throw std::invalid_argument("sample: tau must be positive");
    if (n < 2) throw std::invalid_argument("sample: need at least 2 samples");
    SampledSignal s;
    s.tau = tau;
    s.t0 = t0;
    s.values.resize(n);
    for (std::size_t l = 0; l < n; ++l) {
        double v = fn(t0 + static_cast<double>(l + 1) * tau);
        if (!std::isfinite(v))
            throw std::runtime_error("sample: non-finite value at t=" + std::to_string(t0 + (l + 1) * tau));
        s.values[l] = v;
    }
    return s;
}

}  // namespace sst
