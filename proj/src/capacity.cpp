#include "bicmwb/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "bicmwb/detail/parallel.hpp"
#include "bicmwb/detail/rng.hpp"
#include "bicmwb/quadrature.hpp"

namespace bicmwb {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct FadingNode {
    double chi;
    double weight;
};

std::vector<FadingNode> fading_nodes(const ChannelModel& ch, int order) {
    if (ch.is_awgn()) return {{1.0, 1.0}};
    const QuadratureRule rule = gauss_laguerre_gamma(order, ch.nu());
    std::vector<FadingNode> nodes(rule.nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = {rule.nodes[i], rule.weights[i]};
    return nodes;
}

double max_shifted_log_sum_exp(const std::vector<double>& exponents) {
    double mx = kNegInf;
    for (double e : exponents) mx = std::max(mx, e);
    double sum = 0.0;
    for (double e : exponents) sum += std::exp(e - mx);
    return mx + std::log(sum);
}

// Per-input-symbol linear exponent model: for input a and candidate b,
// exponent(z) = base[b] + zr * coef_re[b] + zi * coef_im[b], which equals
// log P(b) - |s (x_a - x_b) + z|^2 + |z|^2.
struct ExponentModel {
    std::vector<double> base, coef_re, coef_im;

    void fill(const Constellation& c, const std::vector<double>& log_probs, std::size_t a,
              double s) {
        const auto& pts = c.points();
        const std::size_t M = pts.size();
        base.resize(M);
        coef_re.resize(M);
        coef_im.resize(M);
        for (std::size_t b = 0; b < M; ++b) {
            const cplx d = pts[a] - pts[b];
            base[b] = log_probs[b] - s * s * std::norm(d);
            coef_re[b] = -2.0 * s * d.real();
            coef_im[b] = -2.0 * s * d.imag();
        }
    }
};

std::vector<double> log_probs_of(const Constellation& c) {
    std::vector<double> lp(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        lp[i] = c.probs()[i] > 0.0 ? std::log(c.probs()[i]) : kNegInf;
    return lp;
}

// E over X and Z of log sum_b P(b) exp(-|s(X - x_b) + Z|^2 + |Z|^2) at a
// fixed fading amplitude s, by a 2-D Gauss-Hermite product rule.
double expected_log_sum_quad(const Constellation& c, double s, const QuadratureRule& gh) {
    const std::size_t M = c.size();
    const auto log_probs = log_probs_of(c);
    ExponentModel model;
    std::vector<double> exponents(M);
    double acc = 0.0;
    for (std::size_t a = 0; a < M; ++a) {
        if (c.probs()[a] == 0.0) continue;
        model.fill(c, log_probs, a, s);
        double inner = 0.0;
        for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
            const double zr = gh.nodes[k];
            double row = 0.0;
            for (std::size_t l = 0; l < gh.nodes.size(); ++l) {
                const double zi = gh.nodes[l];
                for (std::size_t b = 0; b < M; ++b)
                    exponents[b] = model.base[b] + zr * model.coef_re[b] + zi * model.coef_im[b];
                row += gh.weights[l] * max_shifted_log_sum_exp(exponents);
            }
            inner += gh.weights[k] * row;
        }
        acc += c.probs()[a] * inner;
    }
    return acc;
}

CapacityValue clamped(double raw, double std_error, std::size_t M) {
    CapacityValue v;
    v.raw_nats = raw;
    v.nats = std::clamp(raw, 0.0, std::log(static_cast<double>(M)));
    v.std_error = std_error;
    return v;
}

CapacityValue cm_capacity_quad(const Constellation& c, double snr, const ChannelModel& ch,
                               const Quadrature& q) {
    const QuadratureRule gh = gauss_hermite_half(q.order);
    double acc = 0.0;
    for (const FadingNode& fn : fading_nodes(ch, q.fading_order))
        acc += fn.weight * expected_log_sum_quad(c, std::sqrt(fn.chi * snr), gh);
    return clamped(-acc, 0.0, c.size());
}

// Sampling state shared by the Monte Carlo estimators. Work is split into
// fixed-size chunks with independent generator streams; chunk results are
// reduced in index order, so the estimate does not depend on thread count.
constexpr long kMcChunk = 8192;

struct ChunkStats {
    double sum = 0.0;
    double sum_sq = 0.0;
    long n = 0;
};

template <typename SampleFn>
CapacityValue mc_estimate(const MonteCarlo& mc, std::uint64_t stream, std::size_t M,
                          SampleFn&& sample_fn) {
    const long chunks = (mc.samples + kMcChunk - 1) / kMcChunk;
    std::vector<ChunkStats> stats(chunks);
    const int threads =
        static_cast<int>(std::min<unsigned>(std::thread::hardware_concurrency(), 8));
    detail::parallel_for_indexed(static_cast<std::size_t>(chunks), std::max(1, threads),
                                 [&](std::size_t ci) {
                                     detail::Rng rng(mc.seed, stream, ci);
                                     const long lo = static_cast<long>(ci) * kMcChunk;
                                     const long hi = std::min(mc.samples, lo + kMcChunk);
                                     ChunkStats st;
                                     for (long i = lo; i < hi; ++i) {
                                         const double v = sample_fn(rng);
                                         st.sum += v;
                                         st.sum_sq += v * v;
                                         ++st.n;
                                     }
                                     stats[ci] = st;
                                 });
    ChunkStats total;
    for (const ChunkStats& st : stats) {
        total.sum += st.sum;
        total.sum_sq += st.sum_sq;
        total.n += st.n;
    }
    const double mean = total.sum / total.n;
    const double var = std::max(0.0, total.sum_sq / total.n - mean * mean);
    const double se = std::sqrt(var / total.n);
    return clamped(-mean, se, M);
}

double sample_log_sum(const Constellation& c, const std::vector<double>& log_probs,
                      const std::vector<double>& cdf, double snr, const ChannelModel& ch,
                      detail::Rng& rng, std::vector<double>& exponents) {
    const double u = rng.next_unit_open();
    std::size_t a = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    a = std::min(a, c.size() - 1);
    double zr, zi;
    rng.next_complex_gaussian(zr, zi);
    const double chi = ch.is_awgn() ? 1.0 : rng.next_gamma_unit_mean(ch.nu());
    const double s = std::sqrt(chi * snr);
    const auto& pts = c.points();
    for (std::size_t b = 0; b < c.size(); ++b) {
        const cplx d = pts[a] - pts[b];
        exponents[b] =
            log_probs[b] - s * s * std::norm(d) - 2.0 * s * (d.real() * zr + d.imag() * zi);
    }
    return max_shifted_log_sum_exp(exponents);
}

std::vector<double> cdf_of(const Constellation& c) {
    std::vector<double> cdf(c.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        acc += c.probs()[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    return cdf;
}

CapacityValue cm_capacity_mc(const Constellation& c, double snr, const ChannelModel& ch,
                             const MonteCarlo& mc, std::uint64_t stream) {
    const auto log_probs = log_probs_of(c);
    const auto cdf = cdf_of(c);
    return mc_estimate(mc, stream, c.size(), [&](detail::Rng& rng) {
        thread_local std::vector<double> exponents;
        exponents.resize(c.size());
        return sample_log_sum(c, log_probs, cdf, snr, ch, rng, exponents);
    });
}

CapacityValue cm_capacity_stream(const Constellation& c, double snr, const ChannelModel& ch,
                                 const EvalMethod& method, std::uint64_t stream) {
    if (!(snr >= 0.0)) throw std::invalid_argument("cm_capacity: snr must be >= 0");
    if (snr == 0.0) return CapacityValue{}; // identically zero, exactly
    if (const auto* q = std::get_if<Quadrature>(&method)) return cm_capacity_quad(c, snr, ch, *q);
    return cm_capacity_mc(c, snr, ch, std::get<MonteCarlo>(method), stream);
}

} // namespace

double CapacityValue::bits() const { return nats / std::numbers::ln2; }
double CapacityValue::std_error_bits() const { return std_error / std::numbers::ln2; }

CapacityValue cm_capacity(const Constellation& c, double snr, const ChannelModel& ch,
                          const EvalMethod& method) {
    return cm_capacity_stream(c, snr, ch, method, 0);
}

CapacityValue bicm_capacity(const LabeledConstellation& lc, double snr, const ChannelModel& ch,
                            const EvalMethod& method) {
    const int m = lc.bits();
    const CapacityValue full = cm_capacity_stream(lc.base(), snr, ch, method, 0);
    double nats = m * full.nats;
    double raw = m * full.raw_nats;
    double var = static_cast<double>(m) * m * full.std_error * full.std_error;
    for (int i = 1; i <= m; ++i) {
        for (int b = 0; b <= 1; ++b) {
            const std::uint64_t stream = static_cast<std::uint64_t>(2 * i + b);
            const CapacityValue sub =
                cm_capacity_stream(lc.subconstellation(i, b), snr, ch, method, stream);
            nats -= 0.5 * sub.nats;
            raw -= 0.5 * sub.raw_nats;
            var += 0.25 * sub.std_error * sub.std_error;
        }
    }
    CapacityValue v;
    v.raw_nats = raw;
    v.nats = std::clamp(nats, 0.0, std::log(static_cast<double>(lc.size())));
    v.std_error = std::sqrt(var);
    return v;
}

namespace {

// Direct per-label-bit form: for input a with label bits b_i, the integrand
// is sum_i [ log sum_{b in X_{b_i}^i} e^{g_b} - log sum_b e^{g_b} + log 2 ]
// with g_b = -|s (x_a - x_b) + z|^2 + |z|^2; the max shift cancels between
// numerator and denominator.
struct DirectEvaluator {
    const LabeledConstellation& lc;
    std::vector<std::vector<std::uint8_t>> bit_of_point; // [i-1][point]

    explicit DirectEvaluator(const LabeledConstellation& lc_) : lc(lc_) {
        bit_of_point.resize(lc.bits());
        for (int i = 1; i <= lc.bits(); ++i) {
            bit_of_point[i - 1].resize(lc.size());
            for (std::size_t k = 0; k < lc.size(); ++k)
                bit_of_point[i - 1][k] = static_cast<std::uint8_t>(lc.label_bit(k, i));
        }
    }

    double integrand(std::size_t a, double zr, double zi, double s,
                     std::vector<double>& scratch) const {
        const auto& pts = lc.base().points();
        const std::size_t M = lc.size();
        scratch.resize(M);
        double mx = kNegInf;
        for (std::size_t b = 0; b < M; ++b) {
            const cplx d = pts[a] - pts[b];
            scratch[b] = -s * s * std::norm(d) - 2.0 * s * (d.real() * zr + d.imag() * zi);
            mx = std::max(mx, scratch[b]);
        }
        double full = 0.0;
        for (std::size_t b = 0; b < M; ++b) {
            scratch[b] = std::exp(scratch[b] - mx);
            full += scratch[b];
        }
        const double log_full = std::log(full);
        double acc = 0.0;
        for (int i = 0; i < lc.bits(); ++i) {
            const std::uint8_t want = bit_of_point[i][a];
            double sub = 0.0;
            for (std::size_t b = 0; b < M; ++b)
                if (bit_of_point[i][b] == want) sub += scratch[b];
            acc += std::log(sub) - log_full + std::numbers::ln2;
        }
        return acc;
    }
};

} // namespace

CapacityValue bicm_capacity_direct(const LabeledConstellation& lc, double snr,
                                   const ChannelModel& ch, const EvalMethod& method) {
    if (!(snr >= 0.0)) throw std::invalid_argument("bicm_capacity_direct: snr must be >= 0");
    if (snr == 0.0) return CapacityValue{};
    const DirectEvaluator eval(lc);
    const std::size_t M = lc.size();

    if (const auto* q = std::get_if<Quadrature>(&method)) {
        const QuadratureRule gh = gauss_hermite_half(q->order);
        std::vector<double> scratch;
        double acc = 0.0;
        for (const FadingNode& fn : fading_nodes(ch, q->fading_order)) {
            const double s = std::sqrt(fn.chi * snr);
            double chan = 0.0;
            for (std::size_t a = 0; a < M; ++a) {
                double inner = 0.0;
                for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
                    double row = 0.0;
                    for (std::size_t l = 0; l < gh.nodes.size(); ++l)
                        row += gh.weights[l] *
                               eval.integrand(a, gh.nodes[k], gh.nodes[l], s, scratch);
                    inner += gh.weights[k] * row;
                }
                chan += inner / static_cast<double>(M);
            }
            acc += fn.weight * chan;
        }
        return clamped(acc, 0.0, M);
    }

    const auto& mc = std::get<MonteCarlo>(method);
    // Estimates -integrand so the shared estimator's negation yields the
    // positive capacity.
    CapacityValue v = mc_estimate(mc, /*stream=*/1, M, [&](detail::Rng& rng) {
        thread_local std::vector<double> scratch;
        const std::size_t a = static_cast<std::size_t>(rng.next_below(M));
        double zr, zi;
        rng.next_complex_gaussian(zr, zi);
        const double chi = ch.is_awgn() ? 1.0 : rng.next_gamma_unit_mean(ch.nu());
        return -eval.integrand(a, zr, zi, std::sqrt(chi * snr), scratch);
    });
    return v;
}

CapacityValue gaussian_reference(double snr) {
    if (!(snr >= 0.0)) throw std::invalid_argument("gaussian_reference: snr must be >= 0");
    CapacityValue v;
    v.raw_nats = std::log1p(snr);
    v.nats = v.raw_nats;
    v.std_error = 0.0;
    return v;
}

} // namespace bicmwb
