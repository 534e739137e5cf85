#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bicmwb/channel.hpp"
#include "bicmwb/constellation.hpp"

namespace bicmwb {

/// First two Taylor coefficients of a capacity at snr = 0:
/// C(snr) = c1 snr + c2 snr^2 + o(snr^2), in nats per channel use.
struct ExpansionCoeffs {
    double c1 = 0.0;
    double c2 = 0.0;
    ChannelModel channel = ChannelModel::awgn();
};

/// Zero-rate figures derived from (c1, c2): the bit-energy-to-noise ratio at
/// zero rate, log2/c1, and the wideband slope -c1^3/(c2 log^2 2) in bits per
/// channel use per unit linear Eb/N0. c2 = 0 yields an unbounded slope,
/// reported as an empty optional.
struct WidebandFigures {
    double ebno_lim_linear = 0.0;
    double ebno_lim_db = 0.0;
    std::optional<double> slope_zeta0;
};

/// Coded-modulation coefficients from the constellation moments:
/// c1 = mu2 - |mu1|^2, c2 = -((mu2 - |mu1|^2)^2 + |mu2' - mu1^2|^2) / 2.
ExpansionCoeffs cm_coeffs(const Constellation& c);

/// Per-label-bit coefficients from the subset moments; requires a zero-mean,
/// unit-energy constellation (within 1e-9).
ExpansionCoeffs bicm_coeffs(const LabeledConstellation& lc);

enum class GrayFamily { pam, qam_of_m_squared };

struct GrayC1 {
    double c1 = 0.0;
    double ebno_lim_linear = 0.0;
};

/// Closed form for binary-reflected Gray mapping: c1 = 3 M^2 / (4 (M^2 - 1)),
/// identical for M-PAM and M^2-QAM.
GrayC1 gray_c1(unsigned M, GrayFamily family = GrayFamily::pam);

/// Fading scaling of AWGN coefficients: c1 unchanged, c2 *= (1 + 1/nu).
ExpansionCoeffs apply_fading(const ExpansionCoeffs& coeffs, double nu);

WidebandFigures wideband_figures(const ExpansionCoeffs& coeffs);

/// Truncated series c1 snr + c2 snr^2, nats.
double capacity_series(const ExpansionCoeffs& coeffs, double snr);

/// First-order capacity in bits per channel use around the zero-rate point:
/// zeta0 (ebno - ebno_lim). May be negative below the limit; callers clamp
/// for display.
double linear_ebno_approx(const ExpansionCoeffs& coeffs, double ebno_linear);

/// Least-squares recovery of (c1, c2) from capacity samples on a low-snr
/// grid (>= 4 points in (0, 0.05]). Cubic/quartic nuisance terms absorb
/// curvature beyond the quadratic model. `capacity_nats` must return nats.
ExpansionCoeffs fit_coeffs_numeric(const std::function<double(double)>& capacity_nats,
                                   std::span<const double> snr_grid,
                                   const ChannelModel& tag = ChannelModel::awgn());

/// 8 log-spaced points in [1e-3, 3e-2].
std::vector<double> default_fit_grid();

} // namespace bicmwb
