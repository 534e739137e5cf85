#include "bicmwb/checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "bicmwb/capacity.hpp"
#include "bicmwb/expansion.hpp"
#include "bicmwb/sweep.hpp"
#include "bicmwb/tradeoff.hpp"

namespace bicmwb {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct TableRow {
    const char* name;
    const char* labeling;
    double c1, lim, lim_db, c2, zeta0;
};

// Printed cells of the reference coefficient table (AWGN).
constexpr TableRow kTable[] = {
    {"qpsk", "gray", 1.000, 0.693, -1.592, -0.500, 4.163},
    {"qpsk", "anti-gray", 0.500, 1.386, 1.419, 0.250, -1.041},
    {"8psk", "gray", 0.854, 0.812, -0.904, -0.239, 5.410},
    {"8psk", "sp", 0.427, 1.624, 2.106, 0.005, -29.966},
    {"16qam", "gray", 0.800, 0.866, -0.627, -0.160, 6.660},
    {"16qam", "sp", 0.500, 1.386, 1.419, -0.310, 0.839},
};

LabeledConstellation table_case(const VerifyOptions& opt, const TableRow& row) {
    const std::string key = std::string(row.name) + ":" + row.labeling;
    const auto it = opt.overrides.find(key);
    if (it != opt.overrides.end()) return it->second;
    return make_builtin(row.name, row.labeling);
}

void check_cell(std::ostringstream& bad, const char* what, double computed, double table,
                double abs_tol) {
    if (std::abs(computed - table) > abs_tol)
        bad << " " << what << " computed=" << num(computed) << " table=" << num(table)
            << " tol=" << num(abs_tol) << ";";
}

EvalMethod quad_for(const VerifyOptions& opt, int order = 32) {
    return Quadrature{opt.fast ? std::min(order, 16) : order};
}

} // namespace

std::vector<CheckResult> check_reference_table(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    for (const TableRow& row : kTable) {
        Timer timer;
        CheckResult r;
        r.name = std::string("table:") + row.name + ":" + row.labeling;
        std::ostringstream bad;
        try {
            const LabeledConstellation lc = table_case(opt, row);
            const ExpansionCoeffs coeffs = bicm_coeffs(lc);
            const WidebandFigures f = wideband_figures(coeffs);
            check_cell(bad, "c1", coeffs.c1, row.c1, 5e-4);
            check_cell(bad, "c2", coeffs.c2, row.c2, 5e-4);
            check_cell(bad, "ebno_lim", f.ebno_lim_linear, row.lim, 5e-4);
            check_cell(bad, "ebno_lim_db", f.ebno_lim_db, row.lim_db, 1e-3);
            const double zeta = f.slope_zeta0.value_or(0.0);
            if (std::abs(zeta - row.zeta0) > 1e-3 * std::abs(row.zeta0))
                bad << " zeta0 computed=" << num(zeta) << " table=" << num(row.zeta0)
                    << " rel_tol=0.001;";
        } catch (const std::exception& e) {
            bad << " exception: " << e.what() << ";";
        }
        r.pass = bad.str().empty();
        r.detail = r.pass ? "all cells match" : bad.str();
        r.seconds = timer.seconds();
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CheckResult> check_gray_closed_form(const VerifyOptions&) {
    Timer timer;
    CheckResult r{"gray-closed-form", true, "", 0.0};
    std::ostringstream bad;
    const double lim_db_limit = 10.0 * std::log10(4.0 / 3.0 * std::numbers::ln2);
    double prev_lim = 0.0;
    double lim_db_32 = 0.0;
    for (unsigned M : {2u, 4u, 8u, 16u, 32u}) {
        const GrayC1 g = gray_c1(M);
        const double pam = bicm_coeffs(make_pam(M)).c1;
        const double qam = bicm_coeffs(make_qam(M * M, Labeling::gray)).c1;
        if (std::abs(g.c1 - pam) > 1e-12)
            bad << " M=" << M << " pam c1 mismatch " << num(g.c1) << " vs " << num(pam) << ";";
        if (std::abs(g.c1 - qam) > 1e-12)
            bad << " M=" << M << " qam c1 mismatch " << num(g.c1) << " vs " << num(qam) << ";";
        if (!(g.ebno_lim_linear > prev_lim))
            bad << " M=" << M << " ebno_lim not increasing;";
        if (!(g.ebno_lim_linear < 4.0 / 3.0 * std::numbers::ln2))
            bad << " M=" << M << " ebno_lim not below the limit;";
        prev_lim = g.ebno_lim_linear;
        if (M == 32) lim_db_32 = 10.0 * std::log10(g.ebno_lim_linear);
    }
    if (std::abs(lim_db_32 - lim_db_limit) > 0.01)
        bad << " M=32 ebno_lim " << num(lim_db_32) << " dB not within 0.01 dB of "
            << num(lim_db_limit) << " dB;";
    r.pass = bad.str().empty();
    r.detail = r.pass ? "closed form matches generated constellations; limit approached from below"
                      : bad.str();
    r.seconds = timer.seconds();
    return {r};
}

std::vector<CheckResult> check_numeric_fits(const VerifyOptions& opt) {
    const std::vector<double> grid = default_fit_grid();
    const EvalMethod method = quad_for(opt);
    const ChannelModel awgn = ChannelModel::awgn();

    struct Case {
        std::string name;
        std::function<double(double)> fn;
        double c1, c2;
    };
    std::vector<Case> cases;
    cases.push_back({"fit:gaussian", [](double s) { return gaussian_reference(s).nats; }, 1.0, -0.5});
    for (const char* name : {"qpsk", "8psk", "16qam"}) {
        const LabeledConstellation lc = make_builtin(name, "gray");
        const ExpansionCoeffs e = cm_coeffs(lc.base());
        cases.push_back({std::string("fit:cm:") + name, cm_capacity_fn(lc.base(), awgn, method),
                         e.c1, e.c2});
    }
    for (const auto& [name, labeling] : reference_cases()) {
        const LabeledConstellation lc = make_builtin(name, labeling);
        const ExpansionCoeffs e = bicm_coeffs(lc);
        cases.push_back({"fit:bicm:" + name + ":" + labeling, bicm_capacity_fn(lc, awgn, method),
                         e.c1, e.c2});
    }

    std::vector<CheckResult> out;
    for (const Case& c : cases) {
        Timer timer;
        CheckResult r;
        r.name = c.name;
        const ExpansionCoeffs fit = fit_coeffs_numeric(c.fn, grid);
        const double d1 = std::abs(fit.c1 - c.c1), d2 = std::abs(fit.c2 - c.c2);
        r.pass = d1 <= 5e-3 && d2 <= 5e-3;
        r.detail = "fit (" + num(fit.c1) + ", " + num(fit.c2) + ") vs analytic (" + num(c.c1) +
                   ", " + num(c.c2) + "), |d|=(" + num(d1) + ", " + num(d2) + ")";
        r.seconds = timer.seconds();
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CheckResult> check_decomposition_identity(const VerifyOptions& opt) {
    const EvalMethod method = quad_for(opt);
    std::vector<CheckResult> out;
    for (const auto& [name, labeling] : reference_cases()) {
        Timer timer;
        const LabeledConstellation lc = make_builtin(name, labeling);
        CheckResult r;
        r.name = "decomposition:" + name + ":" + labeling;
        std::ostringstream bad;
        double worst = 0.0;
        for (double snr : {0.01, 0.1, 1.0, 10.0}) {
            const double via_subsets =
                bicm_capacity(lc, snr, ChannelModel::awgn(), method).nats;
            const double direct =
                bicm_capacity_direct(lc, snr, ChannelModel::awgn(), method).nats;
            const double diff = std::abs(via_subsets - direct);
            worst = std::max(worst, diff);
            if (diff > 1e-8)
                bad << " snr=" << num(snr) << " |subset - direct|=" << num(diff) << ";";
        }
        r.pass = bad.str().empty();
        r.detail = r.pass ? "max |subset - direct| = " + num(worst) : bad.str();
        r.seconds = timer.seconds();
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CheckResult> check_capacity_ordering(const VerifyOptions& opt) {
    std::vector<std::pair<std::string, std::string>> cases = reference_cases();
    cases.insert(cases.begin(), {"bpsk", "gray"});
    if (!opt.fast) cases.push_back({"64qam", "gray"});

    std::vector<CheckResult> out;
    for (const auto& [name, labeling] : cases) {
        Timer timer;
        const LabeledConstellation lc = make_builtin(name, labeling);
        const bool is_qpsk_gray = name == "qpsk" && labeling == "gray";
        const EvalMethod method = is_qpsk_gray ? EvalMethod(Quadrature{48}) : quad_for(opt);
        CheckResult r;
        r.name = "ordering:" + name + ":" + labeling;
        std::ostringstream bad;
        double worst_gap = 0.0;
        for (int i = 0; i < 30; ++i) {
            const double snr_db = -30.0 + 40.0 * i / 29.0;
            const double snr = linear_from_db(snr_db);
            const double cm = cm_capacity(lc.base(), snr, ChannelModel::awgn(), method).nats;
            const double bicm = bicm_capacity(lc, snr, ChannelModel::awgn(), method).nats;
            const double shannon = std::log1p(snr);
            if (bicm > cm + 1e-9)
                bad << " snr_db=" << num(snr_db) << " bicm " << num(bicm) << " > cm " << num(cm)
                    << ";";
            if (cm > shannon + 1e-9)
                bad << " snr_db=" << num(snr_db) << " cm " << num(cm) << " > log(1+snr) "
                    << num(shannon) << ";";
            if (is_qpsk_gray) {
                worst_gap = std::max(worst_gap, std::abs(bicm - cm));
                if (std::abs(bicm - cm) > 1e-6)
                    bad << " snr_db=" << num(snr_db) << " |bicm - cm|=" << num(std::abs(bicm - cm))
                        << " exceeds 1e-6;";
            }
        }
        r.pass = bad.str().empty();
        r.detail = r.pass ? (is_qpsk_gray ? "ordering holds; max |bicm - cm| = " + num(worst_gap)
                                          : "ordering holds on 30-point grid")
                          : bad.str();
        r.seconds = timer.seconds();
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CheckResult> check_tradeoff_reproduction(const VerifyOptions& opt) {
    const EvalMethod method = quad_for(opt);
    const ChannelModel awgn = ChannelModel::awgn();
    const LabeledConstellation qpsk = make_builtin("qpsk", "gray");
    const LabeledConstellation qam = make_builtin("16qam", "gray");
    const auto cap_qpsk = bicm_capacity_fn(qpsk, awgn, method);
    const auto cap_qam = bicm_capacity_fn(qam, awgn, method);
    const double snr1 = linear_from_db(-18.0);
    const double dp = linear_from_db(2.4);

    std::vector<CheckResult> out;
    {
        Timer timer;
        CheckResult r{"tradeoff:qpsk-to-16qam", false, "", 0.0};
        const double dw = exact_tradeoff(cap_qpsk, cap_qam, snr1, dp);
        r.pass = dw >= 0.01 && dw <= 0.03;
        r.detail = "delta_w = " + num(dw) + " (expected in [0.01, 0.03])";
        r.seconds = timer.seconds();
        out.push_back(std::move(r));
    }
    {
        Timer timer;
        CheckResult r{"tradeoff:qpsk-to-qpsk", false, "", 0.0};
        const double dw = exact_tradeoff(cap_qpsk, cap_qpsk, snr1, dp);
        r.pass = dw >= 0.02 && dw <= 0.045;
        r.detail = "delta_w = " + num(dw) + " (expected in [0.02, 0.045])";
        r.seconds = timer.seconds();
        out.push_back(std::move(r));
    }
    {
        Timer timer;
        CheckResult r{"tradeoff:approx-vs-exact", true, "", 0.0};
        std::ostringstream bad;
        const TradeoffQuery query{bicm_coeffs(qpsk), bicm_coeffs(qpsk), snr1};
        double worst = 0.0;
        for (int i = 0; i <= 8; ++i) {
            const double dp_db = 0.1 * i;
            const double dp_i = linear_from_db(dp_db);
            const double exact = exact_tradeoff(cap_qpsk, cap_qpsk, snr1, dp_i);
            const double approx = delta_w_approx(query, dp_i);
            const double rel = std::abs(exact - approx) / exact;
            worst = std::max(worst, rel);
            if (rel > 0.05)
                bad << " dp_db=" << num(dp_db) << " rel=" << num(rel) << ";";
        }
        r.pass = bad.str().empty();
        r.detail = r.pass ? "max relative gap " + num(worst) + " on dp in [0, 0.8] dB" : bad.str();
        r.seconds = timer.seconds();
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CheckResult> check_fading_scaling(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    {
        Timer timer;
        CheckResult r{"fading:nakagami1-fit", false, "", 0.0};
        const LabeledConstellation qpsk = make_builtin("qpsk", "gray");
        const ExpansionCoeffs faded = apply_fading(cm_coeffs(qpsk.base()), 1.0);
        const auto fn = cm_capacity_fn(qpsk.base(), ChannelModel::nakagami(1.0), quad_for(opt));
        const std::vector<double> grid = default_fit_grid();
        const ExpansionCoeffs fit = fit_coeffs_numeric(fn, grid, ChannelModel::nakagami(1.0));
        const double d1 = std::abs(fit.c1 - faded.c1), d2 = std::abs(fit.c2 - faded.c2);
        r.pass = d1 <= 5e-3 && d2 <= 5e-3;
        r.detail = "fit (" + num(fit.c1) + ", " + num(fit.c2) + ") vs scaled (" + num(faded.c1) +
                   ", " + num(faded.c2) + ")";
        r.seconds = timer.seconds();
        out.push_back(std::move(r));
    }
    {
        Timer timer;
        CheckResult r{"fading:penalty", false, "", 0.0};
        const ExpansionCoeffs qpsk = cm_coeffs(make_builtin("qpsk", "gray").base());
        const TradeoffPoint p = nakagami_penalty(qpsk, 1.0, 0.01, PenaltyMode::fix_power);
        r.pass = p.delta_w == 2.0 && p.delta_p == 1.0;
        r.detail = "fix_power at nu=1: delta_w = " + num(p.delta_w);
        r.seconds = timer.seconds();
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CheckResult> check_sweep_determinism(const VerifyOptions& opt) {
    Timer timer;
    CheckResult r{"determinism:sweep", false, "", 0.0};
    SweepSpec spec{make_builtin("16qam", "gray"), SweepAxis::snr_db, -20.0, 0.0, 2.0,
                   ChannelModel::awgn(), Quadrature{opt.fast ? 8 : 16}};
    const std::string once = sweep_csv(spec, 1);
    const std::string again = sweep_csv(spec, 1);
    const std::string pooled = sweep_csv(spec, 8);
    spec.method = MonteCarlo{20000, opt.seed};
    const std::string mc_once = sweep_csv(spec, 1);
    const std::string mc_pooled = sweep_csv(spec, 8);
    r.pass = once == again && once == pooled && mc_once == mc_pooled;
    r.detail = r.pass
                   ? "byte-identical across repeated runs and worker pools {1, 8}, "
                     "quadrature and fixed-seed Monte Carlo"
                   : "outputs differ across runs or worker pools";
    r.seconds = timer.seconds();
    return {r};
}

std::vector<CheckResult> check_monte_carlo_agreement(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    const long samples = opt.fast ? 50000 : 200000;
    struct Case {
        const char* name;
        const char* labeling;
        double snr;
    };
    for (const Case& c : {Case{"qpsk", "gray", 0.25}, Case{"16qam", "gray", 0.5}}) {
        Timer timer;
        CheckResult r;
        r.name = std::string("mc-vs-quad:") + c.name;
        const LabeledConstellation lc = make_builtin(c.name, c.labeling);
        const CapacityValue quad =
            cm_capacity(lc.base(), c.snr, ChannelModel::awgn(), Quadrature{32});
        const CapacityValue mc = cm_capacity(lc.base(), c.snr, ChannelModel::awgn(),
                                             MonteCarlo{samples, opt.seed});
        const double diff = std::abs(quad.nats - mc.nats);
        r.pass = diff <= 4.0 * mc.std_error + 1e-12;
        r.detail = "|quad - mc| = " + num(diff) + ", 4 se = " + num(4.0 * mc.std_error);
        r.seconds = timer.seconds();
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    const auto append = [&out](std::vector<CheckResult> part) {
        for (auto& r : part) out.push_back(std::move(r));
    };
    append(check_reference_table(opt));
    append(check_gray_closed_form(opt));
    append(check_numeric_fits(opt));
    append(check_decomposition_identity(opt));
    append(check_monte_carlo_agreement(opt));
    return out;
}

} // namespace bicmwb
