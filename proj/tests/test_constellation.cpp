#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "bicmwb/constellation.hpp"
#include "bicmwb/expansion.hpp"

using namespace bicmwb;

namespace {

Constellation random_constellation(std::mt19937& gen) {
    std::uniform_int_distribution<int> size_dist(1, 12);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::exponential_distribution<double> mass(1.0);
    const int M = size_dist(gen);
    std::vector<cplx> pts;
    std::vector<double> probs;
    double total = 0.0;
    for (int i = 0; i < M; ++i) {
        pts.emplace_back(coord(gen), coord(gen));
        probs.push_back(mass(gen) + 1e-3);
        total += probs.back();
    }
    for (double& p : probs) p /= total;
    // Make the sum exactly 1 within tolerance.
    probs.back() += 1.0 - std::accumulate(probs.begin(), probs.end(), 0.0);
    return Constellation(pts, probs);
}

} // namespace

TEST_CASE("pam generator") {
    const LabeledConstellation pam2 = make_pam(2);
    CHECK(pam2.base().points()[0] == cplx{-1.0, 0.0});
    CHECK(pam2.base().points()[1] == cplx{1.0, 0.0});
    CHECK(pam2.label_string(0) == "0");
    CHECK(pam2.label_string(1) == "1");

    const LabeledConstellation pam4 = make_pam(4);
    const double beta = std::sqrt(0.2);
    CHECK(pam4.base().points()[0].real() == doctest::Approx(-3.0 * beta).epsilon(1e-15));
    CHECK(pam4.base().points()[1].real() == doctest::Approx(-beta).epsilon(1e-15));
    CHECK(pam4.label_string(0) == "00");
    CHECK(pam4.label_string(1) == "01");
    CHECK(pam4.label_string(2) == "11");
    CHECK(pam4.label_string(3) == "10");

    const Moments m8 = make_pam(8).base().moments();
    CHECK(std::abs(m8.mu1) <= 1e-12);
    CHECK(m8.mu2 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m8.mu2_pseudo.real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(m8.mu2_pseudo.imag()) <= 1e-13);

    CHECK_THROWS_AS(make_pam(3), std::invalid_argument);
    CHECK_THROWS_AS(make_pam(0), std::invalid_argument);
}

TEST_CASE("psk generator") {
    const Moments qpsk = make_psk(4, Labeling::gray).base().moments();
    CHECK(std::abs(qpsk.mu2_pseudo) <= 1e-12);
    const Moments bpsk = make_psk(2, Labeling::gray).base().moments();
    CHECK(bpsk.mu2_pseudo.real() == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(make_psk(8, Labeling::anti_gray), std::invalid_argument);
    CHECK_THROWS_AS(make_psk(6, Labeling::gray), std::invalid_argument);
}

TEST_CASE("qam accepts square sizes only") {
    CHECK(make_qam(16, Labeling::gray).size() == 16);
    CHECK_THROWS_AS(make_qam(8, Labeling::gray), std::invalid_argument);
    CHECK_THROWS_AS(make_qam(32, Labeling::gray), std::invalid_argument);
    CHECK_THROWS_AS(make_qam(2, Labeling::gray), std::invalid_argument);
    CHECK_THROWS_AS(make_qam(64, Labeling::set_partitioning), std::invalid_argument);
}

TEST_CASE("generators produce zero-mean unit-energy bijectively labeled sets") {
    std::vector<LabeledConstellation> cases;
    for (unsigned M : {2u, 4u, 8u, 16u, 32u}) cases.push_back(make_pam(M));
    for (unsigned M : {2u, 4u, 8u, 16u}) cases.push_back(make_psk(M, Labeling::gray));
    cases.push_back(make_psk(8, Labeling::set_partitioning));
    cases.push_back(make_psk(4, Labeling::anti_gray));
    cases.push_back(make_qam(4, Labeling::gray));
    cases.push_back(make_qam(16, Labeling::gray));
    cases.push_back(make_qam(16, Labeling::set_partitioning));
    cases.push_back(make_qam(64, Labeling::gray));

    for (const LabeledConstellation& lc : cases) {
        const Moments m = lc.base().moments();
        CHECK(std::abs(m.mu1) <= 1e-12);
        CHECK(std::abs(m.mu2 - 1.0) <= 1e-12);
        std::vector<std::uint32_t> sorted(lc.labels());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 0; k < sorted.size(); ++k) CHECK(sorted[k] == k);
    }
}

TEST_CASE("qam(4) is qpsk up to a rotation") {
    const LabeledConstellation qam = make_qam(4, Labeling::gray);
    const LabeledConstellation qpsk = make_psk(4, Labeling::gray);
    const cplx rot = std::polar(1.0, std::numbers::pi / 4.0);
    for (const cplx& p : qam.base().points()) {
        bool found = false;
        for (const cplx& q : qpsk.base().points())
            if (std::abs(p - q * rot) < 1e-12) found = true;
        CHECK(found);
    }
    const ExpansionCoeffs a = cm_coeffs(qam.base());
    CHECK(a.c1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.c2 == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("moments of a shifted pair") {
    const Constellation c({{0.0, 0.0}, {2.0, 0.0}}, {0.5, 0.5});
    const Moments m = c.moments();
    CHECK(m.mu1.real() == doctest::Approx(1.0));
    CHECK(m.mu2 == doctest::Approx(2.0));
    CHECK(m.mu2_pseudo.real() == doctest::Approx(2.0));
}

TEST_CASE("subconstellations") {
    const LabeledConstellation pam2 = make_pam(2);
    const Constellation left = pam2.subconstellation(1, 0);
    REQUIRE(left.size() == 1);
    CHECK(left.points()[0] == cplx{-1.0, 0.0});
    CHECK(left.probs()[0] == doctest::Approx(1.0));

    const LabeledConstellation pam4 = make_pam(4);
    const Moments high0 = pam4.subconstellation(1, 0).moments();
    CHECK(std::norm(high0.mu1) == doctest::Approx(0.8).epsilon(1e-13));
    const Moments low0 = pam4.subconstellation(2, 0).moments();
    CHECK(std::abs(low0.mu1) <= 1e-13);

    for (const LabeledConstellation& lc :
         {make_pam(8), make_psk(8, Labeling::set_partitioning), make_qam(16, Labeling::gray)}) {
        for (int i = 1; i <= lc.bits(); ++i) {
            double energy = 0.0;
            std::size_t count = 0;
            for (int b = 0; b <= 1; ++b) {
                const Constellation sub = lc.subconstellation(i, b);
                energy += 0.5 * sub.moments().mu2;
                count += sub.size();
            }
            CHECK(count == lc.size());
            CHECK(energy == doctest::Approx(1.0).epsilon(1e-13));
        }
    }

    CHECK_THROWS_AS(pam4.subconstellation(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(pam4.subconstellation(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(pam4.subconstellation(1, 2), std::invalid_argument);
}

TEST_CASE("covariance closed forms and trace identity") {
    const Covariance2x2 qpsk = make_psk(4, Labeling::gray).base().covariance();
    CHECK(qpsk.var_re == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(qpsk.var_im == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(qpsk.cov_re_im == doctest::Approx(0.0).epsilon(1e-14));

    const Covariance2x2 bpsk = make_pam(2).base().covariance();
    CHECK(bpsk.var_re == doctest::Approx(1.0));
    CHECK(bpsk.var_im == doctest::Approx(0.0));

    std::mt19937 gen(1234);
    for (int trial = 0; trial < 100; ++trial) {
        const Constellation c = random_constellation(gen);
        const Moments m = c.moments();
        const Covariance2x2 cov = c.covariance();
        CHECK(cov.trace() == doctest::Approx(m.mu2 - std::norm(m.mu1)).epsilon(1e-12));
        CHECK(cov.var_re * cov.var_im + 1e-15 >= cov.cov_re_im * cov.cov_re_im);
        CHECK(std::norm(m.mu1) <= m.mu2 + 1e-15);
        CHECK(std::abs(m.mu2_pseudo) <= m.mu2 + 1e-15);
    }
}

TEST_CASE("trace-form coefficients match the moment form on random sets") {
    std::mt19937 gen(99);
    for (int trial = 0; trial < 100; ++trial) {
        const Constellation c = random_constellation(gen);
        const ExpansionCoeffs e = cm_coeffs(c);
        const Covariance2x2 cov = c.covariance();
        const double c1_trace = cov.trace();
        const double c2_trace = -(cov.var_re * cov.var_re + cov.var_im * cov.var_im +
                                  2.0 * cov.cov_re_im * cov.cov_re_im);
        CHECK(e.c1 == doctest::Approx(c1_trace).epsilon(1e-12));
        CHECK(e.c2 == doctest::Approx(c2_trace).epsilon(1e-12));
    }
}

TEST_CASE("phase rotation covariance") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int trial = 0; trial < 20; ++trial) {
        const Constellation c = random_constellation(gen);
        const double theta = angle(gen);
        const cplx rot = std::polar(1.0, theta);
        const Moments before = c.moments();
        const Moments after = c.scaled(rot).moments();
        CHECK(after.mu2 == doctest::Approx(before.mu2).epsilon(1e-12));
        CHECK(std::abs(after.mu1 - before.mu1 * rot) <= 1e-12);
        CHECK(std::abs(after.mu2_pseudo - before.mu2_pseudo * rot * rot) <= 1e-12);
        CHECK(std::abs(after.mu2_pseudo) == doctest::Approx(std::abs(before.mu2_pseudo)).epsilon(1e-12));
    }
}

TEST_CASE("mixture") {
    const Constellation qpsk = make_psk(4, Labeling::gray).base();
    const Constellation same = mixture({{qpsk, 1.0}});
    CHECK(same.size() == 4);
    CHECK(same.moments().mu2 == doctest::Approx(1.0));

    // Two rings, both larger than binary, normalized to unit energy.
    const double r1 = 0.6, r2 = std::sqrt(2.0 - r1 * r1);
    const Constellation ring1 = qpsk.scaled(cplx{r1, 0.0});
    const Constellation ring2 = make_psk(4, Labeling::gray).base().scaled(
        std::polar(r2, std::numbers::pi / 4.0));
    const Constellation apsk = mixture({{ring1, 0.5}, {ring2, 0.5}});
    CHECK(apsk.size() == 8);
    const ExpansionCoeffs rings = cm_coeffs(apsk);
    CHECK(rings.c1 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rings.c2 == doctest::Approx(-0.5).epsilon(1e-13));

    // A binary ring leaves a residual pseudo-moment, pushing c2 below -1/2.
    const Constellation bpsk_ring = make_pam(2).base().scaled(cplx{r1, 0.0});
    const Constellation with_binary = mixture({{bpsk_ring, 0.5}, {ring2, 0.5}});
    CHECK(cm_coeffs(with_binary).c2 < -0.5 - 1e-6);

    // Coincident points merge.
    const Constellation doubled = mixture({{qpsk, 0.5}, {qpsk, 0.5}});
    CHECK(doubled.size() == 4);
    CHECK(doubled.probs()[0] == doctest::Approx(0.25));

    CHECK_THROWS_AS(mixture({}), std::invalid_argument);
    CHECK_THROWS_AS(mixture({{qpsk, 0.7}}), std::invalid_argument);
    CHECK_THROWS_AS(mixture({{qpsk, -0.2}, {qpsk, 1.2}}), std::invalid_argument);
}

TEST_CASE("constellation validation") {
    CHECK_THROWS_AS(Constellation({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Constellation({{0.0, 0.0}}, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Constellation({{0.0, 0.0}}, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Constellation({{1.0, 0.0}, {0.0, 1.0}}, {1.5, -0.5}), std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Constellation({{nan, 0.0}}, {1.0}), std::invalid_argument);

    const Constellation merged({{1.0, 0.0}, {1.0 + 1e-15, 0.0}, {-1.0, 0.0}}, {0.3, 0.3, 0.4});
    CHECK(merged.size() == 2);
    CHECK(merged.probs()[0] == doctest::Approx(0.6));

    CHECK_THROWS_AS(LabeledConstellation({{1.0, 0.0}, {1.0, 0.0}}, {0, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(LabeledConstellation({{1.0, 0.0}, {-1.0, 0.0}}, {0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(LabeledConstellation({{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}}, {0, 1, 2}),
                    std::invalid_argument);
}
