#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "coexsim/mac.hpp"
#include "oracles.hpp"

using namespace coexsim;

TEST_CASE("single station: no collisions, closed-form tau") {
    const auto r = bianchi_solve(1, {});
    CHECK(r.p_coll == 0.0);
    CHECK(r.tau == doctest::Approx(2.0 / 17.0).epsilon(1e-12));
}

TEST_CASE("tau non-increasing, collision probability non-decreasing in n") {
    double prev_tau = 1.0, prev_p = -1.0;
    for (int n = 1; n <= 30; ++n) {
        const auto r = bianchi_solve(n, {});
        CHECK(r.tau <= prev_tau + 1e-12);
        CHECK(r.p_coll >= prev_p - 1e-12);
        prev_tau = r.tau;
        prev_p = r.p_coll;
    }
}

TEST_CASE("fixed point against the backoff simulation oracle") {
    const MacParams mac;
    for (int n : {2, 5}) {
        const auto model = bianchi_solve(n, mac);
        const auto mc = oracles::simulate_backoff(n, mac, 1'000'000, 20240 + n);
        CHECK(std::abs(mc.tau / model.tau - 1.0) < 0.02);
        CHECK(std::abs(mc.p_coll / model.p_coll - 1.0) < 0.02);
    }
}

TEST_CASE("channel-time fractions sum to one and eta_c vanishes for n=1") {
    const MacParams mac;
    for (int n = 1; n <= 30; ++n) {
        const auto f = channel_time_fractions(n, mac);
        CHECK(std::abs(f.eta_e + f.eta_s + f.eta_c - 1.0) < 1e-9);
        CHECK(f.eta_e >= 0.0);
        CHECK(f.eta_s >= 0.0);
        CHECK(f.eta_c >= 0.0);
    }
    CHECK(channel_time_fractions(1, mac).eta_c < 1e-15);
}

TEST_CASE("fractions and saturation throughput match the oracle within 2%") {
    const MacParams mac;
    for (int n : {1, 3}) {
        const auto f = channel_time_fractions(n, mac);
        const auto mc = oracles::simulate_backoff(n, mac, 2'000'000, 99 + n);
        CHECK(std::abs(f.eta_s / mc.eta_s - 1.0) < 0.02);
        CHECK(std::abs(f.eta_e / mc.eta_e - 1.0) < 0.02);
        const double model_thr = bianchi_saturation_throughput_bps(n, mac);
        CHECK(std::abs(model_thr / mc.throughput_bps - 1.0) < 0.02);
        // eta_s * payload / success airtime is the throughput identity.
        CHECK(model_thr ==
              doctest::Approx(f.eta_s * mac.payload_bits / success_airtime_us(mac) * 1e6)
                  .epsilon(1e-12));
    }
}

TEST_CASE("calibration recovers a synthetic (alpha, beta) pair") {
    const double bw = 20e6;
    const EffParams truth{0.61, 0.37};
    std::vector<AnchorPoint> anchors;
    for (double s_db : {-4.0, 0.0, 4.0, 8.0, 12.0, 16.0, 20.0, 24.0}) {
        const double s = std::pow(10.0, s_db / 10.0);
        anchors.push_back({s_db, truth.alpha * bw * std::log2(1.0 + truth.beta * s)});
    }
    const auto fit = calibrate_efficiency(Tech::lte, anchors, bw);
    CHECK(std::abs(fit.eff.alpha - truth.alpha) < 1e-6);
    CHECK(std::abs(fit.eff.beta - truth.beta) < 1e-6);
    CHECK(fit.residual < 1e-9);
}

TEST_CASE("calibration is invariant to anchor order") {
    const double bw = 20e6;
    auto anchors = lte_default_anchors(0.6, bw);
    auto shuffled = anchors;
    std::mt19937_64 rng(3);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto a = calibrate_efficiency(Tech::lte, anchors, bw);
    const auto b = calibrate_efficiency(Tech::lte, shuffled, bw);
    CHECK(a.eff.alpha == b.eff.alpha);
    CHECK(a.eff.beta == b.eff.beta);
    CHECK(a.residual == b.residual);
}

TEST_CASE("degenerate anchor curves are rejected") {
    const double bw = 20e6;
    CHECK_THROWS_AS(calibrate_efficiency(Tech::wifi, std::vector<AnchorPoint>{{0, 1e6}}, bw),
                    std::invalid_argument);
    const std::vector<AnchorPoint> dup{{4.0, 1e6}, {4.0, 2e6}};
    CHECK_THROWS_AS(calibrate_efficiency(Tech::wifi, dup, bw), std::invalid_argument);
}

TEST_CASE("default Wi-Fi anchors peak at 22.2 Mbps and fit within 10%") {
    const MacParams mac;
    const auto anchors = wifi_default_anchors(mac);
    double peak = 0.0;
    for (const auto& a : anchors) {
        peak = std::max(peak, a.rate_bps);
    }
    CHECK(peak == doctest::Approx(22.2e6).epsilon(1e-9));

    const auto fit = calibrate_efficiency(Tech::wifi, anchors, 20e6);
    CHECK(fit.eff.alpha > 0.0);
    CHECK(fit.eff.alpha <= 1.0);
    CHECK(fit.eff.beta > 0.0);
    CHECK(fit.eff.beta <= 1.0);
    for (const auto& a : anchors) {
        const double s = std::pow(10.0, a.sinr_db / 10.0);
        const double model = fit.eff.alpha * 20e6 * std::log2(1.0 + fit.eff.beta * s);
        CHECK(std::abs(model / a.rate_bps - 1.0) < 0.10);
    }
}

TEST_CASE("default LTE anchors fit within 10%") {
    const auto anchors = lte_default_anchors();
    CHECK(anchors.size() == 15);
    CHECK(anchors.front().sinr_db == doctest::Approx(-6.0));
    const auto fit = calibrate_efficiency(Tech::lte, anchors, 20e6);
    for (const auto& a : anchors) {
        const double s = std::pow(10.0, a.sinr_db / 10.0);
        const double model = fit.eff.alpha * 20e6 * std::log2(1.0 + fit.eff.beta * s);
        CHECK(std::abs(model / a.rate_bps - 1.0) < 0.10);
    }
}

TEST_CASE("anchor files parse two numeric columns with comments") {
    std::istringstream in("# sinr_db mbps\n4.5 3.98\n7.0 5.74\n\n22.0 22.2 # peak\n");
    const auto pts = load_anchors(in);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].sinr_db == 4.5);
    CHECK(pts[2].rate_bps == doctest::Approx(22.2e6));

    std::istringstream bad("4.5\n");
    CHECK_THROWS_AS(load_anchors(bad), std::invalid_argument);
}

TEST_CASE("invalid MAC parameters are rejected") {
    MacParams mac;
    mac.cw_min = 0.0;
    CHECK_THROWS_AS(bianchi_solve(2, mac), std::invalid_argument);
    CHECK_THROWS_AS(bianchi_solve(0, MacParams{}), std::invalid_argument);
}
