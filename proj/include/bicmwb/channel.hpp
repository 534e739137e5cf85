#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>

namespace bicmwb {

/// Memoryless channel: AWGN, or fully-interleaved Nakagami-nu fading with
/// the fading coefficient known at the receiver. The squared fading magnitude
/// chi is Gamma(nu, 1/nu), so E[chi] = 1 and E[chi^2] = 1 + 1/nu; AWGN is
/// the nu -> infinity limit (chi == 1).
class ChannelModel {
  public:
    static ChannelModel awgn() { return ChannelModel(Kind::awgn, 0.0); }
    static ChannelModel nakagami(double nu) {
        if (!(nu > 0.0)) throw std::invalid_argument("ChannelModel: nakagami nu must be > 0");
        return ChannelModel(Kind::nakagami, nu);
    }

    bool is_awgn() const { return kind_ == Kind::awgn; }
    bool is_nakagami() const { return kind_ == Kind::nakagami; }
    /// Shape parameter; only meaningful for Nakagami.
    double nu() const { return nu_; }

  private:
    enum class Kind { awgn, nakagami };
    ChannelModel(Kind kind, double nu) : kind_(kind), nu_(nu) {}
    Kind kind_;
    double nu_;
};

/// Deterministic Gauss-Hermite / Gauss-Laguerre evaluation.
struct Quadrature {
    explicit Quadrature(int order_ = 32, int fading_order_ = 64)
        : order(order_), fading_order(fading_order_) {
        if (order < 4) throw std::invalid_argument("Quadrature: order must be >= 4");
        if (fading_order < 4) throw std::invalid_argument("Quadrature: fading order must be >= 4");
    }
    int order;
    int fading_order;
};

/// Monte Carlo evaluation; results are bit-identical for a fixed
/// (samples, seed) regardless of how the work is split across threads.
struct MonteCarlo {
    MonteCarlo(long samples_, std::uint64_t seed_) : samples(samples_), seed(seed_) {
        if (samples < 1000) throw std::invalid_argument("MonteCarlo: need at least 1000 samples");
    }
    long samples;
    std::uint64_t seed;
};

using EvalMethod = std::variant<Quadrature, MonteCarlo>;

} // namespace bicmwb
