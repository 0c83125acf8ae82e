#include "qkdsc/decoy.hpp"

#include "qkdsc/qmath.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace qkdsc;

namespace {

ChannelParams defaults_at(double length_km) {
    ChannelParams p;
    p.length_km = length_km;
    return p;
}

// Poisson-series oracles, truncated at k = 50: the gain is the average of
// the yields Y_k = Y_0 + eta_k, and the error-weighted gain averages
// Y_k e_k = e0 Y_0 + (e_det + q) eta_k.
double series_gain(const ChannelParams& p) {
    const double eta = transmittance(p);
    double sum = 0.0, weight = std::exp(-p.mu);
    for (int k = 0; k <= 50; ++k) {
        sum += weight * (p.y0 + (k == 0 ? 0.0 : 1.0 - std::pow(1.0 - eta, k)));
        weight *= p.mu / (k + 1);
    }
    return sum;
}

double series_error_gain(const ChannelParams& p, double q_attack) {
    const double eta = transmittance(p);
    double sum = 0.0, weight = std::exp(-p.mu);
    for (int k = 0; k <= 50; ++k) {
        const double eta_k = (k == 0 ? 0.0 : 1.0 - std::pow(1.0 - eta, k));
        sum += weight * (p.e0 * p.y0 + (p.e_det + q_attack) * eta_k);
        weight *= p.mu / (k + 1);
    }
    return sum;
}

}  // namespace

TEST_CASE("transmittance arithmetic") {
    ChannelParams p;
    p.length_km = 0.0;
    CHECK(transmittance(p) == 1.0);

    p.length_km = 50.0;
    CHECK(transmittance(p) == doctest::Approx(0.1).epsilon(1e-14));

    p.length_km = 100.0;
    p.eta_bob = 0.5;
    CHECK(transmittance(p) == doctest::Approx(0.005).epsilon(1e-14));
}

TEST_CASE("n-photon transmission probability") {
    CHECK(eta_n(0.3, 0) == 0.0);
    CHECK(eta_n(0.3, 1) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(eta_n(0.1, 3) == doctest::Approx(0.271).epsilon(1e-12));
    CHECK_THROWS_AS(eta_n(1.5, 2), std::invalid_argument);
}

TEST_CASE("n-photon yields") {
    ChannelParams p = defaults_at(50.0);  // eta = 0.1
    CHECK(yield_n(p, 0) == doctest::Approx(p.y0).epsilon(1e-15));
    CHECK(yield_n(p, 1) == doctest::Approx(0.10001).epsilon(1e-12));
    CHECK(yield_n(p, 200) <= 1.0);
    p.length_km = 0.0;
    CHECK(yield_n(p, 60) == 1.0);  // capped
}

TEST_CASE("gain matches closed form and series oracle") {
    ChannelParams p = defaults_at(0.0);
    CHECK(gain_qmu(p) == doctest::Approx(1e-5 + 1.0 - std::exp(-0.5)).epsilon(1e-14));

    p = defaults_at(50.0);
    CHECK(gain_qmu(p) == doctest::Approx(1e-5 + 1.0 - std::exp(-0.05)).epsilon(1e-14));

    std::mt19937 rng(51);
    std::uniform_real_distribution<double> len(0.0, 150.0), mu(0.1, 1.0), eb(0.3, 1.0),
        y0(1e-6, 1e-4);
    for (int rep = 0; rep < 20; ++rep) {
        ChannelParams q;
        q.length_km = len(rng);
        q.mu = mu(rng);
        q.eta_bob = eb(rng);
        q.y0 = y0(rng);
        CHECK(std::abs(gain_qmu(q) - series_gain(q)) < 1e-10);
    }
}

TEST_CASE("observed QBER limits and series oracle") {
    // Dark counts dominate at vanishing transmittance: E_mu -> e0.
    ChannelParams p = defaults_at(400.0);
    CHECK(qber_emu(p, 0.0) == doctest::Approx(p.e0).epsilon(1e-2));

    // Without dark counts the detector error is all that remains.
    p = defaults_at(50.0);
    p.y0 = 0.0;
    CHECK(qber_emu(p, 0.0) == doctest::Approx(p.e_det).epsilon(1e-12));

    std::mt19937 rng(52);
    std::uniform_real_distribution<double> len(0.0, 150.0), mu(0.1, 1.0), q_att(0.0, 0.4);
    for (int rep = 0; rep < 20; ++rep) {
        ChannelParams q;
        q.length_km = len(rng);
        q.mu = mu(rng);
        const double qa = q_att(rng);
        CHECK(std::abs(qber_emu(q, qa) * gain_qmu(q) - series_error_gain(q, qa)) < 1e-10);
    }
}

TEST_CASE("single-photon error rate") {
    ChannelParams p = defaults_at(50.0);
    p.y0 = 0.0;
    CHECK(single_photon_error(p, 0.0) == doctest::Approx(p.e_det).epsilon(1e-12));
    CHECK(single_photon_error(p, 0.11) == doctest::Approx(p.e_det + 0.11).epsilon(1e-12));

    // Spreadsheet-style recomputation with dark counts at 50 km.
    p = defaults_at(50.0);
    const double expected = (0.5 * 1e-5 + (0.01 + 0.02) * 0.1) / (1e-5 + 0.1);
    CHECK(expected == doctest::Approx(0.030046995300).epsilon(1e-10));
    CHECK(single_photon_error(p, 0.02) == doctest::Approx(expected).epsilon(1e-13));

    p.y0 = 0.0;
    p.eta_bob = 0.0;  // Y_1 = 0
    CHECK_THROWS_AS(single_photon_error(p, 0.0), std::invalid_argument);
}

TEST_CASE("decoy rate at short distance is positive and dies by 200 km") {
    const RatePoint at0 = key_rate_decoy(defaults_at(0.0), 0.0, 0.0);
    CHECK(at0.rate > 0.0);

    const RatePoint at50 = key_rate_decoy(defaults_at(50.0), 0.0, 0.0);
    CHECK(at50.rate > 0.0);
    CHECK(at50.rate < at0.rate);

    // The reference channel stays alive well past 130 km...
    CHECK(key_rate_decoy(defaults_at(150.0), 0.0, 0.0).rate > 0.0);
    // ...and is gone by 200 km (the asymptotic zero crossing sits near 196).
    CHECK(key_rate_decoy(defaults_at(200.0), 0.0, 0.0).rate == 0.0);
}

TEST_CASE("entropy saturation kills the single-photon term") {
    ChannelParams p = defaults_at(10.0);
    const RatePoint r = key_rate_decoy(p, 0.5, 0.5);
    CHECK(r.e1 >= 0.5);
    CHECK(r.rate == 0.0);
}

TEST_CASE("rates are non-increasing in distance") {
    for (double q : {0.0, 0.02}) {
        double prev = 1.0;
        for (int km = 0; km <= 200; km += 1) {
            const double r = key_rate_decoy(defaults_at(km), q, q).rate;
            CHECK(r <= prev + 1e-12);
            prev = r;
        }
    }
}

TEST_CASE("GLLP error inflation") {
    SUBCASE("no imbalance leaves e1 unchanged") {
        CHECK(gllp_e1prime(0.013, Imbalance{0.0}, 0.1) == doctest::Approx(0.013).epsilon(1e-14));
    }
    SUBCASE("a fully revealed basis saturates even at zero error") {
        // delta' = 1/2 and e1 = 0 give e1' = 1, clamped to the 1/2 kill value.
        CHECK(gllp_e1prime(0.0, Imbalance{0.5}, 1.0) == 0.5);
    }
    SUBCASE("three-term arithmetic oracle") {
        // e1 = 0.01, delta' = 0.01:
        // 0.01 + 4*0.99*0.01*0.98 + 4*0.98*sqrt(0.01*0.99*0.01*0.99) = 0.087616.
        CHECK(gllp_e1prime(0.01, Imbalance{0.01}, 1.0) ==
              doctest::Approx(0.087616).epsilon(1e-12));
    }
    SUBCASE("lossless-channel correction divides by the yield") {
        const double direct = gllp_e1prime(0.01, Imbalance{0.001}, 0.01);
        const double expected = 0.01 + 4.0 * 0.9 * 0.1 * 0.98 +
                                4.0 * 0.8 * std::sqrt(0.1 * 0.9 * 0.01 * 0.99);
        CHECK(direct == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(gllp_e1prime(0.6, Imbalance{0.1}, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(gllp_e1prime(0.1, Imbalance{0.1}, 0.0), std::invalid_argument);
    }
}

TEST_CASE("GLLP rate equals the plain rate at zero imbalance") {
    for (double km : {0.0, 50.0, 120.0}) {
        const RatePoint plain = key_rate_decoy(defaults_at(km), 0.02, 0.02);
        const RatePoint gllp = key_rate_gllp(defaults_at(km), Imbalance{0.0}, 0.02, 0.02);
        CHECK(gllp.rate == doctest::Approx(plain.rate).epsilon(1e-14));
    }
}

TEST_CASE("GLLP rate is never above the plain rate") {
    for (double delta : {0.001, 0.01, 0.05}) {
        for (int km = 0; km <= 200; km += 5) {
            const RatePoint plain = key_rate_decoy(defaults_at(km), 0.0, 0.0);
            const RatePoint gllp =
                key_rate_gllp(defaults_at(km), Imbalance{delta}, 0.0, 0.0);
            CHECK(gllp.rate <= plain.rate + 1e-12);
        }
    }
}

TEST_CASE("GLLP dies much earlier as the yield correction saturates") {
    // At long distance delta' = delta / Y_1 reaches 1/2 even for small
    // imbalance and the rate is identically zero.
    const Imbalance delta{0.01};
    CHECK(key_rate_gllp(defaults_at(20.0), delta, 0.0, 0.0).rate > 0.0);
    CHECK(key_rate_gllp(defaults_at(60.0), delta, 0.0, 0.0).rate == 0.0);
    CHECK(key_rate_decoy(defaults_at(60.0), 0.01, 0.0).rate > 0.0);
}

TEST_CASE("channel parameter validation") {
    ChannelParams p;
    p.mu = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ChannelParams{};
    p.f = 0.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ChannelParams{};
    p.y0 = 1.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ChannelParams{};
    p.length_km = -1.0;
    CHECK_THROWS_AS(transmittance(p), std::invalid_argument);
}
