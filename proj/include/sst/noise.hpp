#pragma once

#include <cmath>
#include <complex>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#include "sst/rng.hpp"
#include "sst/signal.hpp"

namespace sst::noise {

enum class Innovation { Gaussian, StudentT4 };

/// ARMA(p,q) in the convention a(z)X = b(z)w where a, b are stored as
/// coefficient lists with leading 1, applied directly to the series:
///   X_t + sum_j ar[j] X_{t-j} = w_t + sum_j ma[j] w_{t-j}.
struct ArmaSpec {
    std::vector<double> ar_poly{1.0};  // [1, a1, ..., ap]
    std::vector<double> ma_poly{1.0};  // [1, b1, ..., bq]
    Innovation innovation = Innovation::Gaussian;
    std::size_t burn_in = 1000;

    void validate() const {
        if (ar_poly.empty() || ar_poly[0] != 1.0 || ma_poly.empty() || ma_poly[0] != 1.0)
            throw std::invalid_argument("ArmaSpec: leading polynomial coefficients must be 1");
        // stationarity: a(z) must not vanish on the unit circle
        constexpr int kGrid = 8192;
        for (int g = 0; g < kGrid; ++g) {
            double th = 2.0 * M_PI * g / kGrid;
            std::complex<double> z(std::cos(th), std::sin(th)), acc(0.0, 0.0), zp(1.0, 0.0);
            for (double c : ar_poly) {
                acc += c * zp;
                zp *= z;
            }
            if (std::abs(acc) < 1e-8) throw std::invalid_argument("ArmaSpec: AR root on the unit circle");
        }
    }
};

struct GarchSpec {
    double omega0 = 1.0;
    std::vector<double> arch;   // coefficients on past squared innovations
    std::vector<double> garch;  // coefficients on past conditional variances

    void validate() const {
        if (!(omega0 > 0.0)) throw std::invalid_argument("GarchSpec: omega0 must be positive");
        double s = 0.0;
        for (double a : arch) {
            if (a < 0.0) throw std::invalid_argument("GarchSpec: negative ARCH coefficient");
            s += a;
        }
        for (double b : garch) {
            if (b < 0.0) throw std::invalid_argument("GarchSpec: negative GARCH coefficient");
            s += b;
        }
        if (!(s < 1.0)) throw std::invalid_argument("GarchSpec: not covariance stationary");
    }
};

inline std::vector<double> simulate_arma(const ArmaSpec& spec, std::size_t n, std::uint64_t seed,
                                         std::uint64_t stream = 0) {
    spec.validate();
    if (n < 1) throw std::invalid_argument("simulate_arma: n must be >= 1");
    Philox rng(seed, stream);
    std::size_t p = spec.ar_poly.size() - 1, q = spec.ma_poly.size() - 1;
    std::size_t total = n + spec.burn_in;
    std::vector<double> w(total), x(total);
    for (std::size_t i = 0; i < total; ++i)
        w[i] = (spec.innovation == Innovation::Gaussian) ? rng.gaussian() : rng.student_t4();
    for (std::size_t i = 0; i < total; ++i) {
        double acc = w[i];
        for (std::size_t j = 1; j <= q && j <= i; ++j) acc += spec.ma_poly[j] * w[i - j];
        for (std::size_t j = 1; j <= p && j <= i; ++j) acc -= spec.ar_poly[j] * x[i - j];
        x[i] = acc;
    }
    return {x.begin() + static_cast<std::ptrdiff_t>(spec.burn_in), x.end()};
}

/// Power spectral density of the stationary ARMA solution at xi in [0, 2pi):
/// sigma2 |b(e^{-i xi})|^2 / (2 pi |a(e^{-i xi})|^2).
inline double arma_spectral_density(const ArmaSpec& spec, double xi, double sigma2) {
    spec.validate();
    std::complex<double> z(std::cos(xi), -std::sin(xi));
    auto poly = [&z](const std::vector<double>& c) {
        std::complex<double> acc(0.0, 0.0), zp(1.0, 0.0);
        for (double v : c) {
            acc += v * zp;
            zp *= z;
        }
        return acc;
    };
    double num = std::norm(poly(spec.ma_poly));
    double den = std::norm(poly(spec.ar_poly));
    return sigma2 * num / (2.0 * M_PI * den);
}

inline std::vector<double> simulate_garch(const GarchSpec& spec, std::size_t n, std::uint64_t seed,
                                          std::uint64_t stream = 0, std::size_t burn_in = 1000) {
    spec.validate();
    if (n < 1) throw std::invalid_argument("simulate_garch: n must be >= 1");
    Philox rng(seed, stream);
    double asum = 0.0, bsum = 0.0;
    for (double a : spec.arch) asum += a;
    for (double b : spec.garch) bsum += b;
    double uncond = spec.omega0 / (1.0 - asum - bsum);
    std::size_t total = n + burn_in;
    std::deque<double> eps2(spec.arch.size(), uncond);
    std::deque<double> sig2(spec.garch.size(), uncond);
    std::vector<double> out(total);
    for (std::size_t i = 0; i < total; ++i) {
        double s2 = spec.omega0;
        for (std::size_t j = 0; j < spec.arch.size(); ++j) s2 += spec.arch[j] * eps2[j];
        for (std::size_t j = 0; j < spec.garch.size(); ++j) s2 += spec.garch[j] * sig2[j];
        double e = std::sqrt(s2) * rng.gaussian();
        out[i] = e;
        if (!eps2.empty()) {
            eps2.pop_back();
            eps2.push_front(e * e);
        }
        if (!sig2.empty()) {
            sig2.pop_back();
            sig2.push_front(s2);
        }
    }
    return {out.begin() + static_cast<std::ptrdiff_t>(burn_in), out.end()};
}

enum class NoiseKind { X1, X2, X3, X4, X5 };

inline NoiseKind noise_kind_from_string(const std::string& s) {
    if (s == "X1") return NoiseKind::X1;
    if (s == "X2") return NoiseKind::X2;
    if (s == "X3") return NoiseKind::X3;
    if (s == "X4") return NoiseKind::X4;
    if (s == "X5") return NoiseKind::X5;
    throw std::invalid_argument("unknown noise kind: " + s);
}

/// Slowly varying variance modulator sigma(t) = 1 + 0.1 cos(pi t).
inline double sigma_modulator(double t) { return 1.0 + 0.1 * std::cos(M_PI * t); }

inline ArmaSpec arma1_spec(Innovation innov = Innovation::StudentT4) {
    ArmaSpec s;
    s.ar_poly = {1.0, 0.5};
    s.ma_poly = {1.0, 0.4};
    s.innovation = innov;
    return s;
}

inline ArmaSpec arma2_spec(Innovation innov = Innovation::StudentT4) {
    ArmaSpec s;
    s.ar_poly = {1.0, -0.2};
    s.ma_poly = {1.0, 0.51};
    s.innovation = innov;
    return s;
}

inline GarchSpec garch_spec() {
    GarchSpec g;
    g.omega0 = 1.0;
    g.arch = {0.2};
    g.garch = {0.2, 0.3};
    return g;
}

/// Error processes of the simulation study (sampled on t = tau, ..., n*tau):
///   X1 = 2 sigma(t) ARMA1(t4)
///   X2 = sigma(t) (4 ARMA1(t4) on the first half, ARMA2(t4) on the second)
///   X3 = 2 GARCH(1,2)
///   X4 = sigma(t) (4 ARMA1(N(0,1)) first half, ARMA2(N(0,1)) second half)
///   X5 = sigma(t) (4 ARMA1(t4) first half, ARMA2(N(0,1)) second half)
inline SampledSignal make_noise(NoiseKind kind, std::size_t n, double tau, std::uint64_t seed) {
    SampledSignal out;
    out.tau = tau;
    out.values.resize(n);
    auto modulated_switch = [&](const ArmaSpec& first, const ArmaSpec& second) {
        if (n % 2 != 0) throw std::invalid_argument("make_noise: n must be even for switching kinds");
        auto a = simulate_arma(first, n, seed, 0);
        auto b = simulate_arma(second, n, seed, 1);
        std::size_t h = n / 2;
        for (std::size_t l = 0; l < n; ++l) {
            double t = static_cast<double>(l + 1) * tau;
            double v = (l < h) ? 4.0 * a[l] : b[l];
            out.values[l] = sigma_modulator(t) * v;
        }
    };
    switch (kind) {
        case NoiseKind::X1: {
            auto a = simulate_arma(arma1_spec(), n, seed, 0);
            for (std::size_t l = 0; l < n; ++l)
                out.values[l] = 2.0 * sigma_modulator(static_cast<double>(l + 1) * tau) * a[l];
            break;
        }
        case NoiseKind::X2:
            modulated_switch(arma1_spec(), arma2_spec());
            break;
        case NoiseKind::X3: {
            auto g = simulate_garch(garch_spec(), n, seed, 0);
            for (std::size_t l = 0; l < n; ++l) out.values[l] = 2.0 * g[l];
            break;
        }
        case NoiseKind::X4:
            modulated_switch(arma1_spec(Innovation::Gaussian), arma2_spec(Innovation::Gaussian));
            break;
        case NoiseKind::X5:
            modulated_switch(arma1_spec(Innovation::StudentT4), arma2_spec(Innovation::Gaussian));
            break;
    }
    return out;
}

}  // namespace sst::noise
