#pragma once

#include <cstdint>

#include "bicmwb/channel.hpp"
#include "bicmwb/constellation.hpp"

namespace bicmwb {

/// Capacity in nats per channel use. `nats` is clamped to [0, log M];
/// `raw_nats` keeps the unclamped value for diagnostics. `std_error` is the
/// Monte Carlo standard error (0 for quadrature).
struct CapacityValue {
    double nats = 0.0;
    double std_error = 0.0;
    double raw_nats = 0.0;

    double bits() const;
    double std_error_bits() const;
};

/// Mutual information between a channel input drawn from `c` and the output
/// of y = h sqrt(snr) x + z, z ~ CN(0,1), h known at the receiver.
CapacityValue cm_capacity(const Constellation& c, double snr, const ChannelModel& ch,
                          const EvalMethod& method);

/// Parallel-subchannel capacity of the labeled constellation, computed by
/// the subset decomposition: sum_i (1/2) sum_b (C_X - C_{X_b^i}) with every
/// term an equiprobable cm_capacity. Subsets keep their raw mean and energy.
CapacityValue bicm_capacity(const LabeledConstellation& lc, double snr, const ChannelModel& ch,
                            const EvalMethod& method);

/// Same quantity evaluated directly as the sum of per-label-bit mutual
/// informations; independent cross-check of the subset decomposition.
CapacityValue bicm_capacity_direct(const LabeledConstellation& lc, double snr,
                                   const ChannelModel& ch, const EvalMethod& method);

/// log(1 + snr) nats: Gaussian-input reference.
CapacityValue gaussian_reference(double snr);

} // namespace bicmwb
