#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace bicmwb::detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Small deterministic generator (xoshiro256**), seeded via splitmix64 from
/// a (seed, stream, chunk) triple so independent chunks never share state.
class Rng {
  public:
    Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t chunk) {
        std::uint64_t x = seed;
        x ^= 0x5851f42d4c957f2dULL * (stream + 1);
        x ^= 0x14057b7ef767814fULL * (chunk + 1);
        for (auto& word : s_) word = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in (0, 1]: never 0, so log() is safe.
    double next_unit_open() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Uniform index in [0, n) by rejection (no modulo bias).
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    /// One CN(0,1) draw: independent N(0, 1/2) real and imaginary parts.
    void next_complex_gaussian(double& re, double& im) {
        const double r = std::sqrt(-std::log(next_unit_open()));
        const double phi = 2.0 * std::numbers::pi * next_unit_open();
        re = r * std::cos(phi);
        im = r * std::sin(phi);
    }

    double next_standard_normal() {
        return std::sqrt(-2.0 * std::log(next_unit_open())) *
               std::cos(2.0 * std::numbers::pi * next_unit_open());
    }

    /// Gamma(shape, 1/shape) with unit mean (Marsaglia-Tsang; boost for
    /// shape < 1 via Gamma(shape + 1) and a power of a uniform).
    double next_gamma_unit_mean(double shape) {
        return sample_gamma(shape) / shape;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    double sample_gamma(double shape) {
        if (shape < 1.0) {
            const double u = next_unit_open();
            return sample_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = next_standard_normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = next_unit_open();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    std::uint64_t s_[4];
};

} // namespace bicmwb::detail
