#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bicmwb/capacity.hpp"
#include "bicmwb/checks.hpp"
#include "bicmwb/json_io.hpp"
#include "bicmwb/sweep.hpp"

namespace {

using namespace bicmwb;

// Selector syntax: "name:labeling" for built-ins (labeling defaults to
// gray), "@path.json" for the JSON constellation format.
LabeledConstellation resolve_selector(const std::string& selector) {
    if (!selector.empty() && selector.front() == '@') {
        LoadedConstellation loaded = load_constellation_json(selector.substr(1));
        if (!loaded.labeled)
            throw std::invalid_argument(selector + ": JSON constellation needs a label table");
        return *loaded.labeled;
    }
    const auto colon = selector.find(':');
    const std::string name = selector.substr(0, colon);
    const std::string labeling = colon == std::string::npos ? "gray" : selector.substr(colon + 1);
    return make_builtin(name, labeling);
}

ChannelModel parse_channel(const std::string& text) {
    if (text == "awgn") return ChannelModel::awgn();
    if (text.rfind("nakagami:", 0) == 0) return ChannelModel::nakagami(std::stod(text.substr(9)));
    throw std::invalid_argument("channel must be awgn or nakagami:<nu>");
}

EvalMethod parse_method(const std::string& text, std::uint64_t seed) {
    if (text == "quad") return Quadrature{};
    if (text.rfind("quad:", 0) == 0) return Quadrature{std::stoi(text.substr(5))};
    if (text.rfind("mc:", 0) == 0) return MonteCarlo{std::stol(text.substr(3)), seed};
    throw std::invalid_argument("method must be quad:<order> or mc:<samples>");
}

int write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return 1;
    }
    return 0;
}

int default_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 16u));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coded-modulation and per-label-bit capacity toolbox: low-SNR expansions, "
                 "wideband figures, and power-bandwidth trade-offs"};
    app.require_subcommand(1);

    std::string channel_text = "awgn";
    std::string method_text = "quad:32";
    std::string out_path;
    std::uint64_t seed = 0x5eed;
    int threads = default_threads();

    const auto add_shared = [&](CLI::App* cmd, bool wants_method) {
        cmd->add_option("--channel", channel_text, "awgn or nakagami:<nu>")
            ->capture_default_str();
        if (wants_method)
            cmd->add_option("--method", method_text, "quad:<order> or mc:<samples>")
                ->capture_default_str();
        cmd->add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--threads", threads, "worker pool size")->capture_default_str();
    };

    auto* coeffs = app.add_subcommand("coeffs", "expansion coefficients and wideband figures");
    std::vector<std::string> selector_args;
    coeffs->add_option("selectors", selector_args,
                       "constellation selectors, e.g. qpsk:gray 16qam:sp @custom.json");
    add_shared(coeffs, false);

    auto* sweep = app.add_subcommand("sweep", "capacity sweep as CSV");
    std::string sweep_selector = "qpsk:gray";
    std::string axis_text = "snr_db";
    double start_db = -30.0, stop_db = 10.0, step_db = 1.0;
    sweep->add_option("--constellation", sweep_selector, "built-in selector or @file.json")
        ->capture_default_str();
    sweep->add_option("--axis", axis_text, "snr_db or ebno_db")->capture_default_str();
    sweep->add_option("--start", start_db, "SNR grid start, dB")->capture_default_str();
    sweep->add_option("--stop", stop_db, "SNR grid stop, dB")->capture_default_str();
    sweep->add_option("--step", step_db, "SNR grid step, dB")->capture_default_str();
    add_shared(sweep, true);

    auto* tradeoff = app.add_subcommand("tradeoff", "power-bandwidth trade-off curve as CSV");
    std::string scheme1 = "qpsk:gray", scheme2 = "16qam:gray", mode_text = "both";
    double snr1_db = -18.0, dp_start = 0.0, dp_stop = 4.0, dp_step = 0.1;
    tradeoff->add_option("--scheme1", scheme1, "baseline scheme")->capture_default_str();
    tradeoff->add_option("--scheme2", scheme2, "alternative scheme")->capture_default_str();
    tradeoff->add_option("--snr1-db", snr1_db, "baseline SNR, dB")->capture_default_str();
    tradeoff->add_option("--dp-start", dp_start, "power ratio grid start, dB")
        ->capture_default_str();
    tradeoff->add_option("--dp-stop", dp_stop, "power ratio grid stop, dB")->capture_default_str();
    tradeoff->add_option("--dp-step", dp_step, "power ratio grid step, dB")->capture_default_str();
    tradeoff->add_option("--mode", mode_text, "approx, exact, or both")->capture_default_str();
    add_shared(tradeoff, true);

    auto* verify = app.add_subcommand("verify", "run the reference-value check battery");
    std::string profile = "default";
    std::vector<std::string> override_args;
    verify->add_option("--profile", profile, "default or fast")->capture_default_str();
    verify->add_option("--override", override_args,
                       "replace a built-in labeling in the table check: <name:labeling>=<file.json>");
    add_shared(verify, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (coeffs->parsed()) {
            const ChannelModel channel = parse_channel(channel_text);
            std::string csv;
            if (selector_args.empty()) {
                csv = coeffs_csv(reference_cases(), channel);
            } else {
                std::vector<NamedConstellation> cases;
                for (const std::string& sel : selector_args) {
                    const auto colon = sel.find(':');
                    const bool is_json = !sel.empty() && sel.front() == '@';
                    const std::string name = is_json ? sel.substr(1) : sel.substr(0, colon);
                    const std::string labeling =
                        is_json ? "json"
                                : (colon == std::string::npos ? "gray" : sel.substr(colon + 1));
                    cases.push_back({name, labeling, resolve_selector(sel)});
                }
                csv = coeffs_csv(cases, channel);
            }
            return write_output(out_path, csv);
        }

        if (sweep->parsed()) {
            if (axis_text != "snr_db" && axis_text != "ebno_db")
                throw std::invalid_argument("axis must be snr_db or ebno_db");
            SweepSpec spec{resolve_selector(sweep_selector),
                           axis_text == "ebno_db" ? SweepAxis::ebno_db : SweepAxis::snr_db,
                           start_db,
                           stop_db,
                           step_db,
                           parse_channel(channel_text),
                           parse_method(method_text, seed)};
            return write_output(out_path, sweep_csv(spec, threads));
        }

        if (tradeoff->parsed()) {
            if (snr1_db > -10.0)
                std::cerr << "warning: snr1 above -10 dB leaves the wideband regime; "
                             "the approximation may be poor\n";
            TradeoffMode mode;
            if (mode_text == "approx") mode = TradeoffMode::approx;
            else if (mode_text == "exact") mode = TradeoffMode::exact;
            else if (mode_text == "both") mode = TradeoffMode::both;
            else throw std::invalid_argument("mode must be approx, exact, or both");
            TradeoffSpec spec{resolve_selector(scheme1),
                              resolve_selector(scheme2),
                              snr1_db,
                              dp_start,
                              dp_stop,
                              dp_step,
                              mode,
                              parse_method(method_text, seed)};
            return write_output(out_path, tradeoff_csv(spec, threads));
        }

        if (verify->parsed()) {
            VerifyOptions opt;
            opt.seed = seed;
            opt.fast = profile == "fast";
            if (profile != "fast" && profile != "default")
                throw std::invalid_argument("profile must be default or fast");
            for (const std::string& ov : override_args) {
                const auto eq = ov.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("--override wants <name:labeling>=<file.json>");
                LoadedConstellation loaded = load_constellation_json(ov.substr(eq + 1));
                if (!loaded.labeled)
                    throw std::invalid_argument("--override JSON needs a label table");
                opt.overrides.emplace(ov.substr(0, eq), *loaded.labeled);
            }
            const std::vector<CheckResult> results = run_verification(opt);
            int failures = 0;
            for (const CheckResult& r : results) {
                std::printf("[%s] %s (%.2fs):%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                            r.seconds, r.detail.empty() ? "" : " ", r.detail.c_str());
                failures += r.pass ? 0 : 1;
            }
            std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failures,
                        results.size());
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
