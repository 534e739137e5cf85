#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bicmwb/constellation.hpp"

namespace bicmwb {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    std::uint64_t seed = 0x5eed;
    /// fast: lower quadrature orders and fewer Monte Carlo samples.
    bool fast = false;
    /// Replacement label tables keyed by "name:labeling" (e.g. "8psk:sp");
    /// lets callers exercise the negative path of the table check.
    std::map<std::string, LabeledConstellation> overrides;
};

// Check groups; each returns one result per named check.
std::vector<CheckResult> check_reference_table(const VerifyOptions& opt);
std::vector<CheckResult> check_gray_closed_form(const VerifyOptions& opt);
std::vector<CheckResult> check_numeric_fits(const VerifyOptions& opt);
std::vector<CheckResult> check_decomposition_identity(const VerifyOptions& opt);
std::vector<CheckResult> check_capacity_ordering(const VerifyOptions& opt);
std::vector<CheckResult> check_tradeoff_reproduction(const VerifyOptions& opt);
std::vector<CheckResult> check_fading_scaling(const VerifyOptions& opt);
std::vector<CheckResult> check_sweep_determinism(const VerifyOptions& opt);
std::vector<CheckResult> check_monte_carlo_agreement(const VerifyOptions& opt);

/// The `verify` command battery: reference table, Gray closed form, numeric
/// fits, decomposition identity, Monte Carlo agreement.
std::vector<CheckResult> run_verification(const VerifyOptions& opt);

} // namespace bicmwb
