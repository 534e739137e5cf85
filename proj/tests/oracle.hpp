#pragma once

// Brute-force mutual-information oracle: dense midpoint-rule integration of
// the channel transition density over the complex noise plane. Written as a
// plain double loop on purpose; it shares no code with the library's
// Gauss-Hermite / log-sum-exp evaluation path.

#include <cmath>
#include <vector>

#include "bicmwb/constellation.hpp"

namespace oracle {

inline double riemann_cm_capacity(const bicmwb::Constellation& c, double snr,
                                  double half_width = 7.5, int cells_per_dim = 1000) {
    const double s = std::sqrt(snr);
    const double h = 2.0 * half_width / cells_per_dim;
    const auto& pts = c.points();
    const auto& probs = c.probs();
    const std::size_t M = pts.size();

    double capacity = 0.0;
    for (std::size_t a = 0; a < M; ++a) {
        if (probs[a] == 0.0) continue;
        double integral = 0.0;
        for (int i = 0; i < cells_per_dim; ++i) {
            const double zr = -half_width + (i + 0.5) * h;
            for (int j = 0; j < cells_per_dim; ++j) {
                const double zi = -half_width + (j + 0.5) * h;
                const double noise_density = std::exp(-zr * zr - zi * zi) / M_PI;
                double sum = 0.0;
                for (std::size_t b = 0; b < M; ++b) {
                    const double dr = s * (pts[a].real() - pts[b].real()) + zr;
                    const double di = s * (pts[a].imag() - pts[b].imag()) + zi;
                    sum += probs[b] * std::exp(-(dr * dr + di * di) + zr * zr + zi * zi);
                }
                integral += noise_density * std::log(sum);
            }
        }
        capacity -= probs[a] * integral * h * h;
    }
    return capacity;
}

} // namespace oracle
