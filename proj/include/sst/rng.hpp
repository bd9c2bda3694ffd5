#pragma once

#include <cmath>
#include <cstdint>

namespace sst {

/// Philox4x32-10 counter-based generator (Salmon et al. 2011). The 64-bit
/// seed forms the key; (stream, index) form the 128-bit counter, so distinct
/// streams under one seed are independent and any draw is O(1) addressable.
/// Output is fixed for all platforms, which pins down every simulation.
class Philox {
public:
    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          stream_(stream) {}

    std::uint64_t next_u64() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        std::uint32_t c0 = static_cast<std::uint32_t>(index_);
        std::uint32_t c1 = static_cast<std::uint32_t>(index_ >> 32);
        std::uint32_t c2 = static_cast<std::uint32_t>(stream_);
        std::uint32_t c3 = static_cast<std::uint32_t>(stream_ >> 32);
        ++index_;
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = 0xD2511F53ULL * c0;
            std::uint64_t p1 = 0xCD9E8D57ULL * c2;
            std::uint32_t h0 = static_cast<std::uint32_t>(p0 >> 32), l0 = static_cast<std::uint32_t>(p0);
            std::uint32_t h1 = static_cast<std::uint32_t>(p1 >> 32), l1 = static_cast<std::uint32_t>(p1);
            std::uint32_t n0 = h1 ^ c1 ^ k0;
            std::uint32_t n1 = l1;
            std::uint32_t n2 = h0 ^ c3 ^ k1;
            std::uint32_t n3 = l0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        spare_ = (static_cast<std::uint64_t>(c2) << 32) | c3;
        have_ = true;
        return (static_cast<std::uint64_t>(c0) << 32) | c1;
    }

    /// Uniform in (0, 1): never returns 0, so logs are safe.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (have_gauss_) {
            have_gauss_ = false;
            return spare_gauss_;
        }
        double u1 = uniform(), u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_gauss_ = r * std::sin(a);
        have_gauss_ = true;
        return r * std::cos(a);
    }

    /// Student t with 4 degrees of freedom (raw, variance 2):
    /// t4 = Z / sqrt(chi2_4 / 4) with chi2_4 = -2 ln(U1 U2).
    double student_t4() {
        double z = gaussian();
        double chi2 = -2.0 * std::log(uniform() * uniform());
        return z * std::sqrt(4.0 / chi2);
    }

private:
    std::uint32_t key0_, key1_;
    std::uint64_t stream_;
    std::uint64_t index_ = 0;
    std::uint64_t spare_ = 0;
    bool have_ = false;
    double spare_gauss_ = 0.0;
    bool have_gauss_ = false;
};

}  // namespace sst
