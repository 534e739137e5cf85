#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bicmwb/sweep.hpp"
#include "bicmwb/tradeoff.hpp"

using namespace bicmwb;

namespace {

TradeoffQuery make_query(const char* name1, const char* lab1, const char* name2, const char* lab2,
                         double snr1) {
    return {bicm_coeffs(make_builtin(name1, lab1)), bicm_coeffs(make_builtin(name2, lab2)), snr1};
}

} // namespace

TEST_CASE("same scheme at equal power keeps the bandwidth") {
    const TradeoffQuery q = make_query("qpsk", "gray", "qpsk", "gray", 0.01);
    CHECK(delta_w_approx(q, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("equal first-order coefficients give the slope ratio") {
    // c11 = c12 = 1 with distinct curvatures.
    TradeoffQuery q{{1.0, -0.5, ChannelModel::awgn()}, {1.0, -0.25, ChannelModel::awgn()}, 0.02};
    CHECK(delta_w_approx(q, 1.0) == doctest::Approx(-0.25 / -0.5).epsilon(1e-12));
}

TEST_CASE("divergence threshold of the approximate curve") {
    const double snr1 = linear_from_db(-18.0);
    const TradeoffQuery q = make_query("qpsk", "gray", "16qam", "gray", snr1);
    const double threshold = (q.coeffs1.c1 + q.coeffs1.c2 * snr1) / q.coeffs2.c1;
    CHECK(threshold == doctest::Approx(1.25).epsilon(0.01));

    CHECK_THROWS_AS(delta_w_approx(q, threshold * 0.999), TradeoffDiverged);
    CHECK_THROWS_AS(delta_w_approx(q, threshold), TradeoffDiverged);

    // Just above the threshold the bandwidth ratio blows up, then falls
    // monotonically as the power ratio grows.
    const double near = delta_w_approx(q, threshold * (1.0 + 1e-4));
    const double mid = delta_w_approx(q, threshold * 1.05);
    const double far = delta_w_approx(q, threshold * 1.5);
    CHECK(near > 100.0 * mid);
    CHECK(mid > far);
    double prev = near;
    for (double f : {1.001, 1.01, 1.1, 1.2, 1.4, 1.8}) {
        const double cur = delta_w_approx(q, threshold * f);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("power ratio expansion") {
    // c11 = c12 = 1, dW = 1: dP = 1 + (c21 - c22) snr1.
    TradeoffQuery equal{{1.0, -0.5, ChannelModel::awgn()}, {1.0, -0.25, ChannelModel::awgn()}, 0.01};
    CHECK(delta_p_approx(equal, 1.0) == doctest::Approx(1.0 + (-0.5 + 0.25) * 0.01).epsilon(1e-12));

    const TradeoffQuery same = make_query("qpsk", "gray", "qpsk", "gray", 0.01);
    CHECK(delta_p_approx(same, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

    const TradeoffQuery cross = make_query("qpsk", "gray", "16qam", "gray", 0.01);
    const double expected = 1.25 + (-0.5 / 0.8 - (-0.16) / (0.8 * 0.8 * 0.8)) * 0.01;
    CHECK(delta_p_approx(cross, 1.0) == doctest::Approx(expected).epsilon(1e-12));

    TradeoffQuery degenerate{{1.0, -0.5, ChannelModel::awgn()},
                             {0.0, -0.5, ChannelModel::awgn()},
                             0.01};
    CHECK_THROWS_AS(delta_p_approx(degenerate, 1.0), std::invalid_argument);
}

TEST_CASE("quadratic inverse") {
    // Vanishing curvature of scheme 2 degenerates to the linear equation.
    TradeoffQuery flat{{1.0, -0.5, ChannelModel::awgn()}, {0.8, 0.0, ChannelModel::awgn()}, 0.01};
    CHECK(delta_p_exact_quadratic(flat, 2.0) ==
          doctest::Approx((1.0 - 0.5 * 0.01) / 0.8).epsilon(1e-12));

    // Exact algebraic inverse of the forward map.
    const TradeoffQuery q = make_query("qpsk", "gray", "16qam", "gray", 0.01);
    for (double dw : {0.05, 0.2, 1.0, 4.0, 50.0}) {
        const double dp = delta_p_exact_quadratic(q, dw);
        CHECK(delta_w_approx(q, dp) == doctest::Approx(dw).epsilon(1e-9));
    }

    // First-order expansion error shrinks like snr1^2.
    double prev_err = 0.0;
    for (double snr1 : {1e-2, 1e-3}) {
        TradeoffQuery qq = make_query("qpsk", "gray", "16qam", "gray", snr1);
        const double err = std::abs(delta_p_exact_quadratic(qq, 1.0) - delta_p_approx(qq, 1.0));
        if (prev_err > 0.0) CHECK(err < prev_err / 50.0);
        prev_err = err;
        CHECK(err <= 10.0 * snr1 * snr1);
    }
}

TEST_CASE("exact rate-matching solver") {
    const auto gauss = [](double snr) { return gaussian_reference(snr).nats; };
    CHECK(exact_tradeoff(gauss, gauss, 0.01, 1.0) == doctest::Approx(1.0).epsilon(1e-7));

    const EvalMethod method = Quadrature{24};
    const auto qpsk = bicm_capacity_fn(make_builtin("qpsk", "gray"), ChannelModel::awgn(), method);
    const auto qam = bicm_capacity_fn(make_builtin("16qam", "gray"), ChannelModel::awgn(), method);
    CHECK(exact_tradeoff(qpsk, qpsk, 0.01, 1.0) == doctest::Approx(1.0).epsilon(1e-7));

    // Below the first-order power threshold the rate is unattainable.
    CHECK_THROWS_AS(exact_tradeoff(qpsk, qam, linear_from_db(-18.0), 1.0), TradeoffNoSolution);
}

TEST_CASE("approximation agrees with the exact curve near the divergence") {
    // The truncation error of the approximate trade-off has two parts: one
    // scaling with scheme 2's operating point snr2 = snr1 dp / dw (small
    // where dw is large), one scaling with the cubic term of scheme 1's
    // capacity amplified by the denominator (large exactly at the
    // divergence). A 5% window sits at intermediate distance.
    const EvalMethod method = Quadrature{24};
    const auto qpsk = bicm_capacity_fn(make_builtin("qpsk", "gray"), ChannelModel::awgn(), method);
    const auto qam = bicm_capacity_fn(make_builtin("16qam", "gray"), ChannelModel::awgn(), method);
    for (double snr1 : {1e-3, 1e-2}) {
        const TradeoffQuery q = make_query("qpsk", "gray", "16qam", "gray", snr1);
        const double threshold = (q.coeffs1.c1 + q.coeffs1.c2 * snr1) / q.coeffs2.c1;
        for (double f : {1.002, 1.003, 1.005}) {
            const double dp = threshold * f;
            const double approx = delta_w_approx(q, dp);
            const double exact = exact_tradeoff(qpsk, qam, snr1, dp);
            const double rel = std::abs(exact - approx) / exact;
            CHECK(rel <= 0.05);
            CHECK(snr1 * dp / exact <= 0.03); // stays in the wideband regime
        }
    }
}

TEST_CASE("exact solver survives a non-monotone capacity via the scan fallback") {
    // A wiggly pseudo-capacity breaks the monotonicity assumption of the
    // bisection; the solver must still land on a root of the rate match.
    const double snr1 = 0.01, dp = 1.0;
    const auto cap1 = [](double s) { return s; };
    const auto cap2 = [](double s) { return s * (1.0 + 0.3 * std::sin(10.0 * std::log(s))); };
    const double w = exact_tradeoff(cap1, cap2, snr1, dp);
    const double residual = std::abs(w * cap2(snr1 * dp / w) - cap1(snr1));
    CHECK(residual <= 1e-6 * cap1(snr1));
}

TEST_CASE("fading penalty") {
    const ExpansionCoeffs qpsk = cm_coeffs(make_builtin("qpsk", "gray").base());

    const TradeoffPoint nearly_unfaded = nakagami_penalty(qpsk, 1e12, 0.01, PenaltyMode::fix_power);
    CHECK(nearly_unfaded.delta_p == 1.0);
    CHECK(nearly_unfaded.delta_w == doctest::Approx(1.0).epsilon(1e-11));

    const TradeoffPoint rayleigh = nakagami_penalty(qpsk, 1.0, 0.01, PenaltyMode::fix_power);
    CHECK(rayleigh.delta_w == 2.0);
    CHECK(rayleigh.delta_p == 1.0);

    const TradeoffPoint power = nakagami_penalty(qpsk, 1.0, 0.01, PenaltyMode::fix_bandwidth);
    CHECK(power.delta_w == 1.0);
    CHECK(power.delta_p == doctest::Approx(1.005).epsilon(1e-12));
    CHECK(db_from_linear(power.delta_p) == doctest::Approx(0.0217).epsilon(1e-2));
    CHECK(db_from_linear(power.delta_p) ==
          doctest::Approx(-4.343 * qpsk.c2 * 0.01).epsilon(5e-3));

    CHECK_THROWS_AS(nakagami_penalty(qpsk, 0.0, 0.01, PenaltyMode::fix_power),
                    std::invalid_argument);
    const ExpansionCoeffs shifted = cm_coeffs(Constellation({{0.0, 0.0}, {2.0, 0.0}}, {0.5, 0.5}));
    CHECK(shifted.c1 == doctest::Approx(1.0));
    const ExpansionCoeffs not_unit{0.8, -0.16, ChannelModel::awgn()};
    CHECK_THROWS_AS(nakagami_penalty(not_unit, 1.0, 0.01, PenaltyMode::fix_power),
                    std::invalid_argument);
}

TEST_CASE("query validation") {
    const TradeoffQuery q = make_query("qpsk", "gray", "16qam", "gray", 0.0);
    CHECK_THROWS_AS(delta_w_approx(q, 1.5), std::invalid_argument);
    const TradeoffQuery ok = make_query("qpsk", "gray", "16qam", "gray", 0.01);
    CHECK_THROWS_AS(delta_w_approx(ok, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(delta_p_approx(ok, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(delta_p_exact_quadratic(ok, -1.0), std::invalid_argument);
}
