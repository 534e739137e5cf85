#include "bicmwb/tradeoff.hpp"

#include <cmath>
#include <string>

namespace bicmwb {

namespace {

void require_query(const TradeoffQuery& q) {
    if (!(q.snr1 > 0.0)) throw std::invalid_argument("tradeoff: snr1 must be > 0");
}

} // namespace

double delta_w_approx(const TradeoffQuery& q, double delta_p) {
    require_query(q);
    if (!(delta_p > 0.0)) throw std::invalid_argument("delta_w_approx: delta_p must be > 0");
    const double b = q.coeffs1.c1 + q.coeffs1.c2 * q.snr1;
    const double denom = b - q.coeffs2.c1 * delta_p;
    const double numer = q.coeffs2.c2 * q.snr1 * delta_p * delta_p;
    const double dw = numer / denom;
    if (!(dw > 0.0) || !std::isfinite(dw))
        throw TradeoffDiverged("delta_w_approx: no positive bandwidth ratio at delta_p = " +
                               std::to_string(delta_p) + " (divergence at delta_p = " +
                               std::to_string(b / q.coeffs2.c1) + ")");
    return dw;
}

double delta_p_approx(const TradeoffQuery& q, double delta_w) {
    require_query(q);
    if (!(delta_w > 0.0)) throw std::invalid_argument("delta_p_approx: delta_w must be > 0");
    const double c12 = q.coeffs2.c1;
    if (c12 == 0.0) throw std::invalid_argument("delta_p_approx: requires c1 of scheme 2 != 0");
    return q.coeffs1.c1 / c12 +
           (q.coeffs1.c2 / c12 -
            q.coeffs2.c2 * q.coeffs1.c1 * q.coeffs1.c1 / (c12 * c12 * c12 * delta_w)) *
               q.snr1;
}

double delta_p_exact_quadratic(const TradeoffQuery& q, double delta_w) {
    require_query(q);
    if (!(delta_w > 0.0))
        throw std::invalid_argument("delta_p_exact_quadratic: delta_w must be > 0");
    const double c12 = q.coeffs2.c1;
    if (!(c12 > 0.0))
        throw std::invalid_argument("delta_p_exact_quadratic: requires c1 of scheme 2 > 0");
    const double a = q.coeffs2.c2 * q.snr1;
    const double b = q.coeffs1.c1 + q.coeffs1.c2 * q.snr1;
    if (a == 0.0) return b / c12;
    const double disc = c12 * c12 * delta_w * delta_w + 4.0 * a * b * delta_w;
    if (disc < 0.0)
        throw TradeoffNoSolution("delta_p_exact_quadratic: negative discriminant");
    // Root consistent with the a -> 0 limit b/c12, in a form with no
    // cancellation for small |a|.
    const double dp = 2.0 * b * delta_w / (c12 * delta_w + std::sqrt(disc));
    if (!(dp > 0.0) || !std::isfinite(dp))
        throw TradeoffNoSolution("delta_p_exact_quadratic: no positive root");
    return dp;
}

double exact_tradeoff(const std::function<double(double)>& cap1,
                      const std::function<double(double)>& cap2, double snr1, double delta_p) {
    if (!(snr1 > 0.0)) throw std::invalid_argument("exact_tradeoff: snr1 must be > 0");
    if (!(delta_p > 0.0)) throw std::invalid_argument("exact_tradeoff: delta_p must be > 0");
    const double target = cap1(snr1); // baseline rate per unit of W1
    const double k = snr1 * delta_p;  // snr2 = k / delta_w

    const auto g = [&](double log_w) {
        const double w = std::exp(log_w);
        return w * cap2(k / w) - target;
    };

    constexpr double kLogLo = -6.0 * 2.302585092994046;
    constexpr double kLogHi = 6.0 * 2.302585092994046;

    // g is nondecreasing in w for concave capacities; scan a coarse grid
    // for the sign change and verify monotonicity, falling back to a fine
    // scan if the assumption fails.
    constexpr int kCoarse = 13;
    double prev = 0.0;
    bool monotone = true;
    double lo = kLogLo, hi = kLogHi;
    bool bracketed = false;
    for (int i = 0; i < kCoarse; ++i) {
        const double x = kLogLo + (kLogHi - kLogLo) * i / (kCoarse - 1);
        const double v = g(x);
        if (i > 0) {
            if (v < prev - 1e-9 * (std::abs(v) + std::abs(prev))) monotone = false;
            if (!bracketed && prev <= 0.0 && v >= 0.0) {
                lo = kLogLo + (kLogHi - kLogLo) * (i - 1) / (kCoarse - 1);
                hi = x;
                bracketed = true;
            }
        }
        prev = v;
    }
    if (!monotone || !bracketed) {
        // Fine scan for the first sign change.
        constexpr int kFine = 1201;
        bracketed = false;
        prev = g(kLogLo);
        for (int i = 1; i < kFine && !bracketed; ++i) {
            const double x = kLogLo + (kLogHi - kLogLo) * i / (kFine - 1);
            const double v = g(x);
            if (prev <= 0.0 && v >= 0.0) {
                lo = kLogLo + (kLogHi - kLogLo) * (i - 1) / (kFine - 1);
                hi = x;
                bracketed = true;
            }
            prev = v;
        }
        if (!bracketed)
            throw TradeoffNoSolution(
                "exact_tradeoff: rate not attainable for delta_w in [1e-6, 1e6]");
    }

    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) >= 0.0 ? hi : lo) = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

TradeoffPoint nakagami_penalty(const ExpansionCoeffs& coeffs, double nu, double snr,
                               PenaltyMode mode) {
    if (!(nu > 0.0)) throw std::invalid_argument("nakagami_penalty: nu must be > 0");
    if (!(snr >= 0.0)) throw std::invalid_argument("nakagami_penalty: snr must be >= 0");
    if (!coeffs.channel.is_awgn() || std::abs(coeffs.c1 - 1.0) > 1e-9)
        throw std::invalid_argument(
            "nakagami_penalty: requires unfaded coefficients with c1 = 1");
    if (mode == PenaltyMode::fix_power) return {1.0, 1.0 + 1.0 / nu};
    return {1.0 - (coeffs.c2 / nu) * snr, 1.0};
}

} // namespace bicmwb
