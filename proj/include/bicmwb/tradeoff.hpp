#pragma once

#include <functional>
#include <stdexcept>

#include "bicmwb/expansion.hpp"

namespace bicmwb {

/// Requested power ratio has no positive bandwidth ratio under the low-snr
/// approximation (at or beyond the divergence point of the trade-off curve).
struct TradeoffDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The rate-matching equation has no solution in the search bracket.
struct TradeoffNoSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two transmission schemes compared at equal data rate: scheme 1 is the
/// baseline operating at snr1 (linear, wideband regime snr1 << 1).
struct TradeoffQuery {
    ExpansionCoeffs coeffs1;
    ExpansionCoeffs coeffs2;
    double snr1 = 0.0;
};

/// Power ratio P2/P1 and bandwidth ratio W2/W1 at equal bits per unit time.
struct TradeoffPoint {
    double delta_p = 1.0;
    double delta_w = 1.0;
};

/// Second-order bandwidth ratio for a given power ratio:
/// dW = c22 snr1 dP^2 / (c11 + c21 snr1 - c12 dP). With both c2 < 0 the
/// positive branch requires c12 dP > c11 + c21 snr1; below that threshold
/// throws TradeoffDiverged.
double delta_w_approx(const TradeoffQuery& q, double delta_p);

/// First-order power ratio for a given bandwidth ratio:
/// dP = c11/c12 + (c21/c12 - c22 c11^2 / (c12^3 dW)) snr1. Requires c12 != 0.
double delta_p_approx(const TradeoffQuery& q, double delta_w);

/// Positive root of a dP^2 + c12 dW dP - b dW = 0 with a = c22 snr1,
/// b = c11 + c21 snr1; evaluated in a rationalized form that stays stable as
/// a -> 0 (where it degenerates to dP = b/c12). Exact algebraic inverse of
/// delta_w_approx.
double delta_p_exact_quadratic(const TradeoffQuery& q, double delta_w);

/// Exact bandwidth ratio: solves dW * cap2(snr1 dP / dW) = cap1(snr1) by
/// bracketed bisection on log dW (the left side is nondecreasing in dW for
/// concave capacities). Capacities are in nats and must be monotone in snr.
/// Relative tolerance 1e-8; search bracket [1e-6, 1e6].
double exact_tradeoff(const std::function<double(double)>& cap1,
                      const std::function<double(double)>& cap2, double snr1, double delta_p);

enum class PenaltyMode { fix_power, fix_bandwidth };

/// Cost of moving a unit-energy scheme (AWGN coefficients, c1 = 1) to a
/// Nakagami-nu channel at the same rate: fixed power costs bandwidth
/// dW = 1 + 1/nu; fixed bandwidth costs power dP = 1 - (c2/nu) snr.
TradeoffPoint nakagami_penalty(const ExpansionCoeffs& coeffs, double nu, double snr,
                               PenaltyMode mode);

} // namespace bicmwb
