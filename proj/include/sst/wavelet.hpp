#pragma once

#include <cmath>
#include <stdexcept>

namespace sst {

/// Spectral bump value at dimensionless frequency xi, normalized so the peak
/// at xi = 1 equals 1. Support is the open interval (1-delta, 1+delta);
/// outside it the value is exactly 0.
inline double bump_hat(double xi, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("bump_hat: delta must be in (0,1)");
    double u = (xi - 1.0) / delta;
    if (u <= -1.0 || u >= 1.0) return 0.0;
    return std::exp(1.0 + 1.0 / (u * u - 1.0));
}

/// Integral of bump_hat(z)/z over the support, by composite Simpson rule.
/// The integrand vanishes to all orders at the endpoints, so convergence in
/// the point count is fast.
inline double r_psi_constant(double delta, int quadrature_points = 4096) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("r_psi_constant: delta must be in (0,1)");
    if (quadrature_points < 64) throw std::invalid_argument("r_psi_constant: need at least 64 points");
    int n = quadrature_points;
    if (n % 2 != 0) ++n;
    double a = 1.0 - delta, b = 1.0 + delta;
    double h = (b - a) / n;
    double acc = 0.0;  // endpoint values are 0
    for (int i = 1; i < n; ++i) {
        double z = a + h * i;
        double w = (i % 2 == 1) ? 4.0 : 2.0;
        acc += w * bump_hat(z, delta) / z;
    }
    return acc * h / 3.0;
}

/// Band-limited mother wavelet, defined entirely through its Fourier
/// transform bump_hat on [1-delta, 1+delta]. Never materialized in time.
struct MotherWavelet {
    double delta = 0.3;
    double normalization = 1.0;  // peak value of the spectral bump
    double r_psi = 0.0;          // integral of hat(z)/z over the support

    static MotherWavelet make(double delta = 0.3) {
        if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("MotherWavelet: delta must be in (0,1)");
        MotherWavelet w;
        w.delta = delta;
        w.normalization = 1.0;
        w.r_psi = r_psi_constant(delta);
        return w;
    }

    double hat(double xi) const { return normalization * bump_hat(xi, delta); }
};

}  // namespace sst
