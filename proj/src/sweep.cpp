#include "bicmwb/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "bicmwb/detail/parallel.hpp"
#include "bicmwb/tradeoff.hpp"

namespace bicmwb {

namespace {

// Fixed 6-decimal cell; negative zero normalized so output is diff-stable.
std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    if (buf[0] == '-' && std::strtod(buf, nullptr) == 0.0) return std::string(buf + 1);
    return buf;
}

std::vector<double> db_grid(double start_db, double stop_db, double step_db) {
    if (!(step_db > 0.0)) throw std::invalid_argument("sweep: step must be > 0");
    if (!(start_db < stop_db)) throw std::invalid_argument("sweep: start must be below stop");
    std::vector<double> grid;
    const int n = static_cast<int>(std::floor((stop_db - start_db) / step_db + 1e-9)) + 1;
    grid.reserve(n);
    for (int i = 0; i < n; ++i) grid.push_back(start_db + i * step_db);
    return grid;
}

} // namespace

double db_from_linear(double x) { return 10.0 * std::log10(x); }
double linear_from_db(double db) { return std::pow(10.0, db / 10.0); }

LabeledConstellation make_builtin(const std::string& name, const std::string& labeling) {
    Labeling lab;
    if (labeling == "gray") lab = Labeling::gray;
    else if (labeling == "sp") lab = Labeling::set_partitioning;
    else if (labeling == "anti-gray" || labeling == "anti_gray") lab = Labeling::anti_gray;
    else throw std::invalid_argument("unknown labeling \"" + labeling + "\"");

    if (name == "bpsk") {
        if (lab != Labeling::gray) throw std::invalid_argument("bpsk supports gray only");
        return make_pam(2);
    }
    if (name == "qpsk") {
        if (lab == Labeling::set_partitioning)
            throw std::invalid_argument("qpsk supports gray and anti-gray");
        return make_psk(4, lab);
    }
    if (name == "8psk") {
        if (lab == Labeling::anti_gray) throw std::invalid_argument("8psk supports gray and sp");
        return make_psk(8, lab);
    }
    if (name == "16qam") {
        if (lab == Labeling::anti_gray) throw std::invalid_argument("16qam supports gray and sp");
        return make_qam(16, lab);
    }
    if (name == "64qam") {
        if (lab != Labeling::gray) throw std::invalid_argument("64qam supports gray only");
        return make_qam(64, lab);
    }
    throw std::invalid_argument("unknown constellation \"" + name + "\"");
}

std::vector<std::pair<std::string, std::string>> reference_cases() {
    return {{"qpsk", "gray"},  {"qpsk", "anti-gray"}, {"8psk", "gray"},
            {"8psk", "sp"},    {"16qam", "gray"},     {"16qam", "sp"}};
}

std::function<double(double)> cm_capacity_fn(Constellation c, ChannelModel ch, EvalMethod method) {
    return [c = std::move(c), ch, method](double snr) { return cm_capacity(c, snr, ch, method).nats; };
}

std::function<double(double)> bicm_capacity_fn(LabeledConstellation lc, ChannelModel ch,
                                               EvalMethod method) {
    return
        [lc = std::move(lc), ch, method](double snr) { return bicm_capacity(lc, snr, ch, method).nats; };
}

std::string sweep_csv(const SweepSpec& spec, int threads) {
    const std::vector<double> grid = db_grid(spec.start_db, spec.stop_db, spec.step_db);

    ExpansionCoeffs coeffs = bicm_coeffs(spec.lc);
    if (spec.channel.is_nakagami()) coeffs = apply_fading(coeffs, spec.channel.nu());
    const WidebandFigures figures = wideband_figures(coeffs);

    std::vector<std::string> rows(grid.size());
    detail::parallel_for_indexed(grid.size(), threads, [&](std::size_t i) {
        const double snr = linear_from_db(grid[i]);
        const CapacityValue cm = cm_capacity(spec.lc.base(), snr, spec.channel, spec.method);
        const CapacityValue bicm = bicm_capacity(spec.lc, snr, spec.channel, spec.method);
        const double gaussian_bits = std::log1p(snr) / std::numbers::ln2;
        const double series_bits = capacity_series(coeffs, snr) / std::numbers::ln2;
        const double ebno = snr / std::max(bicm.bits(), 1e-300);
        const std::string linear_cell =
            figures.slope_zeta0
                ? fmt6(std::max(0.0, *figures.slope_zeta0 * (ebno - figures.ebno_lim_linear)))
                : std::string();
        const double x_db = spec.axis == SweepAxis::snr_db ? grid[i] : db_from_linear(ebno);
        rows[i] = fmt6(x_db) + "," + fmt6(cm.bits()) + "," + fmt6(bicm.bits()) + "," +
                  fmt6(gaussian_bits) + "," + fmt6(series_bits) + "," + linear_cell + "\n";
    });

    std::string out = "x_db,cm_bits,bicm_bits,gaussian_bits,series_bits,linear_approx_bits\n";
    for (const std::string& row : rows) out += row;
    return out;
}

std::string coeffs_csv(const std::vector<NamedConstellation>& cases,
                       const ChannelModel& channel) {
    std::string out = "constellation,labeling,c1,ebno_lim,ebno_lim_db,c2,zeta0\n";
    for (const NamedConstellation& c : cases) {
        ExpansionCoeffs coeffs = bicm_coeffs(c.lc);
        if (channel.is_nakagami()) coeffs = apply_fading(coeffs, channel.nu());
        const WidebandFigures f = wideband_figures(coeffs);
        out += c.name + "," + c.labeling + "," + fmt6(coeffs.c1) + "," + fmt6(f.ebno_lim_linear) +
               "," + fmt6(f.ebno_lim_db) + "," + fmt6(coeffs.c2) + "," +
               (f.slope_zeta0 ? fmt6(*f.slope_zeta0) : std::string("inf")) + "\n";
    }
    return out;
}

std::string coeffs_csv(const std::vector<std::pair<std::string, std::string>>& selectors,
                       const ChannelModel& channel) {
    std::vector<NamedConstellation> cases;
    cases.reserve(selectors.size());
    for (const auto& [name, labeling] : selectors)
        cases.push_back({name, labeling, make_builtin(name, labeling)});
    return coeffs_csv(cases, channel);
}

std::string tradeoff_csv(const TradeoffSpec& spec, int threads) {
    const std::vector<double> grid = db_grid(spec.dp_start_db, spec.dp_stop_db, spec.dp_step_db);
    const double snr1 = linear_from_db(spec.snr1_db);

    TradeoffQuery query{bicm_coeffs(spec.scheme1), bicm_coeffs(spec.scheme2), snr1};
    const auto cap1 = bicm_capacity_fn(spec.scheme1, ChannelModel::awgn(), spec.method);
    const auto cap2 = bicm_capacity_fn(spec.scheme2, ChannelModel::awgn(), spec.method);

    std::vector<std::string> rows(grid.size());
    detail::parallel_for_indexed(grid.size(), threads, [&](std::size_t i) {
        const double dp = linear_from_db(grid[i]);
        std::string approx_cell, exact_cell;
        if (spec.mode != TradeoffMode::exact) {
            try {
                approx_cell = fmt6(delta_w_approx(query, dp));
            } catch (const TradeoffDiverged&) {
            }
        }
        if (spec.mode != TradeoffMode::approx) {
            try {
                exact_cell = fmt6(exact_tradeoff(cap1, cap2, snr1, dp));
            } catch (const TradeoffNoSolution&) {
            }
        }
        rows[i] = fmt6(grid[i]) + "," + approx_cell + "," + exact_cell + "\n";
    });

    std::string out = "delta_p_db,delta_w_approx,delta_w_exact\n";
    for (const std::string& row : rows) out += row;
    return out;
}

} // namespace bicmwb
