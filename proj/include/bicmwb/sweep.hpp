#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bicmwb/capacity.hpp"
#include "bicmwb/channel.hpp"
#include "bicmwb/constellation.hpp"
#include "bicmwb/expansion.hpp"

namespace bicmwb {

double db_from_linear(double x);
double linear_from_db(double db);

/// Built-in named constellations: bpsk, qpsk, 8psk, 16qam, 64qam with
/// labeling gray / sp / anti-gray where defined. Throws std::invalid_argument
/// for unknown combinations.
LabeledConstellation make_builtin(const std::string& name, const std::string& labeling);

/// The six (modulation, labeling) pairs of the reference coefficient table.
std::vector<std::pair<std::string, std::string>> reference_cases();

/// cap(snr) in nats for a fixed channel and method.
std::function<double(double)> cm_capacity_fn(Constellation c, ChannelModel ch, EvalMethod method);
std::function<double(double)> bicm_capacity_fn(LabeledConstellation lc, ChannelModel ch,
                                               EvalMethod method);

enum class SweepAxis { snr_db, ebno_db };

/// Capacity sweep over an SNR grid in dB (start/stop/step). For the ebno_db
/// axis the x column is Eb/N0 = snr / (C_bicm log2 e) in dB, rows still in
/// increasing SNR order.
struct SweepSpec {
    LabeledConstellation lc;
    SweepAxis axis = SweepAxis::snr_db;
    double start_db = -30.0;
    double stop_db = 10.0;
    double step_db = 1.0;
    ChannelModel channel = ChannelModel::awgn();
    EvalMethod method = Quadrature{};
};

/// CSV with header x_db,cm_bits,bicm_bits,gaussian_bits,series_bits,
/// linear_approx_bits; fixed 6-decimal formatting, byte-deterministic for a
/// fixed spec across runs and worker counts.
std::string sweep_csv(const SweepSpec& spec, int threads);

/// CSV row per selector: name,labeling,c1,ebno_lim,ebno_lim_db,c2,zeta0.
/// Coefficients are the analytic per-label-bit values, fading-scaled when
/// the channel is Nakagami.
std::string coeffs_csv(const std::vector<std::pair<std::string, std::string>>& selectors,
                       const ChannelModel& channel);

struct NamedConstellation {
    std::string name;
    std::string labeling;
    LabeledConstellation lc;
};

std::string coeffs_csv(const std::vector<NamedConstellation>& cases, const ChannelModel& channel);

enum class TradeoffMode { approx, exact, both };

struct TradeoffSpec {
    LabeledConstellation scheme1;
    LabeledConstellation scheme2;
    double snr1_db = -18.0;
    double dp_start_db = 0.0;
    double dp_stop_db = 4.0;
    double dp_step_db = 0.1;
    TradeoffMode mode = TradeoffMode::both;
    EvalMethod method = Quadrature{};
};

/// CSV with header delta_p_db,delta_w_approx,delta_w_exact. Diverged or
/// unattainable points leave the field empty.
std::string tradeoff_csv(const TradeoffSpec& spec, int threads);

} // namespace bicmwb
