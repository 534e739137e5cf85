#include "bicmwb/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bicmwb {

namespace {

constexpr double kLn2 = std::numbers::ln2;

bool is_power_of_two(unsigned v) { return v != 0 && (v & (v - 1)) == 0; }

// Least squares via Householder QR; a is column-major n x p, overwritten.
std::vector<double> solve_least_squares(std::vector<std::vector<double>>& a,
                                        std::vector<double>& rhs) {
    const std::size_t n = rhs.size();
    const std::size_t p = a.size();
    for (std::size_t j = 0; j < p; ++j) {
        double norm = 0.0;
        for (std::size_t i = j; i < n; ++i) norm += a[j][i] * a[j][i];
        norm = std::sqrt(norm);
        if (norm == 0.0) throw std::invalid_argument("fit: degenerate grid");
        if (a[j][j] > 0.0) norm = -norm;
        for (std::size_t i = j; i < n; ++i) a[j][i] /= norm;
        a[j][j] -= 1.0;
        // Reflector is I + u u^T / u_j for u = v/norm - e_j.
        for (std::size_t c = j + 1; c < p; ++c) {
            double dot = 0.0;
            for (std::size_t i = j; i < n; ++i) dot += a[j][i] * a[c][i];
            dot /= a[j][j];
            for (std::size_t i = j; i < n; ++i) a[c][i] += dot * a[j][i];
        }
        double dot = 0.0;
        for (std::size_t i = j; i < n; ++i) dot += a[j][i] * rhs[i];
        dot /= a[j][j];
        for (std::size_t i = j; i < n; ++i) rhs[i] += dot * a[j][i];
        a[j][j] = norm; // store R's diagonal
    }
    std::vector<double> beta(p);
    for (std::size_t j = p; j-- > 0;) {
        double v = rhs[j];
        for (std::size_t c = j + 1; c < p; ++c) v -= a[c][j] * beta[c];
        beta[j] = v / a[j][j];
    }
    return beta;
}

} // namespace

ExpansionCoeffs cm_coeffs(const Constellation& c) {
    const Moments m = c.moments();
    const double centered_energy = m.mu2 - std::norm(m.mu1);
    const cplx centered_pseudo = m.mu2_pseudo - m.mu1 * m.mu1;
    ExpansionCoeffs e;
    e.c1 = centered_energy;
    e.c2 = -0.5 * (centered_energy * centered_energy + std::norm(centered_pseudo));
    e.channel = ChannelModel::awgn();
    return e;
}

ExpansionCoeffs bicm_coeffs(const LabeledConstellation& lc) {
    if (!lc.base().is_zero_mean_unit_energy(1e-9))
        throw std::invalid_argument("bicm_coeffs: constellation must be zero-mean, unit-energy");
    const Moments full = lc.base().moments();
    const double full_pseudo_norm = std::norm(full.mu2_pseudo);
    ExpansionCoeffs e;
    e.channel = ChannelModel::awgn();
    for (int i = 1; i <= lc.bits(); ++i) {
        for (int b = 0; b <= 1; ++b) {
            const Moments sub = lc.subconstellation(i, b).moments();
            const double centered_energy = sub.mu2 - std::norm(sub.mu1);
            const cplx centered_pseudo = sub.mu2_pseudo - sub.mu1 * sub.mu1;
            e.c1 += 0.5 * std::norm(sub.mu1);
            e.c2 += 0.25 * (centered_energy * centered_energy - (1.0 + full_pseudo_norm) +
                            std::norm(centered_pseudo));
        }
    }
    return e;
}

GrayC1 gray_c1(unsigned M, GrayFamily) {
    if (M < 2 || !is_power_of_two(M))
        throw std::invalid_argument("gray_c1: M must be a power of two >= 2");
    const double m2 = static_cast<double>(M) * M;
    GrayC1 g;
    g.c1 = 3.0 * m2 / (4.0 * (m2 - 1.0));
    g.ebno_lim_linear = kLn2 / g.c1;
    return g;
}

ExpansionCoeffs apply_fading(const ExpansionCoeffs& coeffs, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("apply_fading: nu must be > 0");
    if (!coeffs.channel.is_awgn())
        throw std::invalid_argument("apply_fading: coefficients must be unfaded (AWGN)");
    ExpansionCoeffs out = coeffs;
    out.c2 = (1.0 + 1.0 / nu) * coeffs.c2; // E[chi] = 1 leaves c1 unchanged
    out.channel = ChannelModel::nakagami(nu);
    return out;
}

WidebandFigures wideband_figures(const ExpansionCoeffs& coeffs) {
    if (!(coeffs.c1 > 0.0)) throw std::invalid_argument("wideband_figures: requires c1 > 0");
    WidebandFigures f;
    f.ebno_lim_linear = kLn2 / coeffs.c1;
    f.ebno_lim_db = 10.0 * std::log10(f.ebno_lim_linear);
    if (coeffs.c2 != 0.0)
        f.slope_zeta0 = -(coeffs.c1 * coeffs.c1 * coeffs.c1) / (coeffs.c2 * kLn2 * kLn2);
    return f;
}

double capacity_series(const ExpansionCoeffs& coeffs, double snr) {
    if (!(snr >= 0.0)) throw std::invalid_argument("capacity_series: snr must be >= 0");
    return coeffs.c1 * snr + coeffs.c2 * snr * snr;
}

double linear_ebno_approx(const ExpansionCoeffs& coeffs, double ebno_linear) {
    if (!(ebno_linear > 0.0))
        throw std::invalid_argument("linear_ebno_approx: ebno must be > 0");
    const WidebandFigures f = wideband_figures(coeffs);
    if (!f.slope_zeta0) throw std::invalid_argument("linear_ebno_approx: unbounded slope");
    return *f.slope_zeta0 * (ebno_linear - f.ebno_lim_linear);
}

ExpansionCoeffs fit_coeffs_numeric(const std::function<double(double)>& capacity_nats,
                                   std::span<const double> snr_grid, const ChannelModel& tag) {
    if (snr_grid.size() < 4)
        throw std::invalid_argument("fit_coeffs_numeric: need at least 4 grid points");
    std::vector<double> grid(snr_grid.begin(), snr_grid.end());
    std::sort(grid.begin(), grid.end());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0 && grid[i] <= 0.05))
            throw std::invalid_argument("fit_coeffs_numeric: grid must lie in (0, 0.05]");
        if (i > 0 && grid[i] - grid[i - 1] <= 1e-12 * grid[i])
            throw std::invalid_argument("fit_coeffs_numeric: grid points must be distinct");
    }

    const std::size_t n = grid.size();
    // Cubic and quartic nuisance columns absorb curvature beyond the
    // quadratic model; under heavy fading the higher capacity derivatives
    // are large enough to bias a bare two-term fit.
    const std::size_t terms = n >= 5 ? 4 : 3;
    std::vector<std::vector<double>> design(terms, std::vector<double>(n));
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid[i];
        double power = x;
        for (std::size_t t = 0; t < terms; ++t) {
            design[t][i] = power;
            power *= x;
        }
        rhs[i] = capacity_nats(x);
    }
    const std::vector<double> beta = solve_least_squares(design, rhs);
    ExpansionCoeffs e;
    e.c1 = beta[0];
    e.c2 = beta[1];
    e.channel = tag;
    return e;
}

std::vector<double> default_fit_grid() {
    std::vector<double> grid(8);
    const double lo = std::log(1e-3), hi = std::log(3e-2);
    for (int i = 0; i < 8; ++i) grid[i] = std::exp(lo + (hi - lo) * i / 7.0);
    return grid;
}

} // namespace bicmwb
