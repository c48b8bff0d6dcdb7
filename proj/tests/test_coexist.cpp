#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "coexsim/coexist.hpp"
#include "coexsim/scenario.hpp"

using namespace coexsim;

namespace {

SingleLinkScene base_scene() {
    static const SystemParams params = SystemParams::paper_defaults();
    SingleLinkScene s;
    s.ch = params.ch;
    s.eff_wifi = params.eff_wifi;
    s.eff_lte = params.eff_lte;
    s.smin_wifi = params.smin_wifi();
    s.smin_lte = params.smin_lte();
    s.lte_rate_floor_bps = params.lte_rate_floor_bps;
    s.fractions = channel_time_fractions(1, params.mac);
    s.p_wifi = to_watt(PowerDbm{20.0});
    s.p_lte = to_watt(PowerDbm{20.0});
    return s;
}

}  // namespace

TEST_CASE("channel energy at the Wi-Fi AP") {
    SingleLinkScene s = base_scene();
    s.wifi_ap = {0, 0};
    s.wifi_ue = {0, 5};
    s.lte_ap = {10, 0};
    s.lte_ue = {15, 0};

    SUBCASE("no LTE power leaves only noise") {
        s.p_lte = {0.0};
        CHECK(wifi_channel_energy(s).value ==
              doctest::Approx(s.ch.noise_watt().value).epsilon(1e-15));
    }
    SUBCASE("10 m separation adds -49.29 dBm of interference") {
        const double expected =
            to_watt(PowerDbm{20.0 - path_loss_db(10.0, s.ch)}).value +
            s.ch.noise_watt().value;
        CHECK(wifi_channel_energy(s).value == doctest::Approx(expected).epsilon(1e-12));
        CHECK(to_dbm({wifi_channel_energy(s).value - s.ch.noise_watt().value}).value ==
              doctest::Approx(20.0 - 69.2855).epsilon(1e-4));
    }
    SUBCASE("100 m separation stays below the -62 dBm threshold") {
        s.lte_ap = {100, 0};
        CHECK(wifi_channel_energy(s).value < s.cca_threshold_watt().value);
        CHECK(to_dbm(wifi_channel_energy(s)).value < -62.0);
    }
}

TEST_CASE("Wi-Fi throughput follows the three branches") {
    SingleLinkScene s = base_scene();
    s.wifi_ue = {0, 0};

    SUBCASE("standalone near the calibration peak is ~22.2 Mbps") {
        // Choose the link distance so the SNR sits at the top anchor (22 dB).
        const double target_pl = 20.0 + 101.0 - 22.0;
        const double d = std::pow(10.0, (target_pl - 22.7 -
                                         26.0 * std::log10(2.4)) /
                                            36.7);
        s.wifi_ap = {d, 0};
        s.p_lte = {0.0};
        CHECK(std::abs(wifi_throughput_single(s) / 22.2e6 - 1.0) < 0.10);
    }
    SUBCASE("busy channel silences Wi-Fi") {
        s.wifi_ap = {0, 0};
        s.wifi_ue = {0, 1};
        s.lte_ap = {5, 0};
        CHECK(wifi_throughput_single(s) == 0.0);
        CHECK(classify_region(s, Tech::wifi) == RegionLabel::cca_busy);
    }
    SUBCASE("interfered branch equals the direct formula") {
        s.wifi_ap = {0, 0};
        s.wifi_ue = {5, 0};
        s.lte_ap = {5, 50};  // 50 m from both Wi-Fi nodes (within ~0.25 m)
        s.lte_ue = {60, 50};
        const double g_sig = channel_gain(s.wifi_ap, s.wifi_ue, s.ch).value;
        const double g_int = channel_gain(s.lte_ap, s.wifi_ue, s.ch).value;
        const double expected_sinr =
            s.p_wifi.value * g_sig /
            (s.p_lte.value * g_int + s.ch.noise_watt().value);
        const double expected =
            s.eff_wifi.alpha * s.ch.bandwidth_hz *
            std::log2(1.0 + s.eff_wifi.beta * expected_sinr);
        REQUIRE(wifi_channel_energy(s).value < s.cca_threshold_watt().value);
        REQUIRE(expected_sinr >= s.smin_wifi);
        CHECK(wifi_throughput_single(s) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("LTE throughput blends idle and interfered fractions") {
    SingleLinkScene s = base_scene();
    s.lte_ap = {0, 0};
    s.lte_ue = {10, 0};
    s.wifi_ap = {80, 0};
    s.wifi_ue = {85, 0};

    const double g_l = channel_gain(s.lte_ap, s.lte_ue, s.ch).value;
    const double noise = s.ch.noise_watt().value;
    const double r_standalone =
        s.eff_lte.alpha * s.ch.bandwidth_hz *
        std::log2(1.0 + s.eff_lte.beta * s.p_lte.value * g_l / noise);

    SUBCASE("no Wi-Fi gives the standalone rate exactly") {
        s.p_wifi = {0.0};
        CHECK(lte_throughput_single(s) == doctest::Approx(r_standalone).epsilon(1e-12));
    }
    SUBCASE("Wi-Fi silenced by CCA gives the standalone rate exactly") {
        s.wifi_ap = {5, 0};  // 5 m from the LTE AP: E_c above threshold
        s.wifi_ue = {7, 0};
        REQUIRE(wifi_channel_energy(s).value > s.cca_threshold_watt().value);
        CHECK(lte_throughput_single(s) == doctest::Approx(r_standalone).epsilon(1e-12));
        CHECK(classify_region(s, Tech::lte) == RegionLabel::cca_busy);
    }
    SUBCASE("hand-set fractions blend matches the direct evaluation") {
        s.fractions = {0.1, 0.9, 0.0};
        const double g_lw = channel_gain(s.wifi_ap, s.lte_ue, s.ch).value;
        const double s_int =
            s.p_lte.value * g_l / (s.p_wifi.value * g_lw + noise);
        REQUIRE(s_int >= s.smin_lte);
        const double r_int = s.eff_lte.alpha * s.ch.bandwidth_hz *
                             std::log2(1.0 + s.eff_lte.beta * s_int);
        CHECK(lte_throughput_single(s) ==
              doctest::Approx(0.1 * r_standalone + 0.9 * r_int).epsilon(1e-12));
    }
}

TEST_CASE("LowSinr handling: strict flag and CQI floor") {
    SingleLinkScene s = base_scene();
    s.lte_ap = {0, 0};
    s.lte_ue = {60, 0};
    s.wifi_ap = {61, 0};  // interferer right next to the LTE UE
    s.wifi_ue = {63, 0};
    REQUIRE(classify_region(s, Tech::lte) == RegionLabel::low_sinr);

    s.strict_low_sinr = true;
    CHECK(lte_throughput_single(s) == 0.0);

    s.strict_low_sinr = false;
    const double g_l = channel_gain(s.lte_ap, s.lte_ue, s.ch).value;
    const double r0 = s.eff_lte.alpha * s.ch.bandwidth_hz *
                      std::log2(1.0 + s.eff_lte.beta * s.p_lte.value * g_l /
                                          s.ch.noise_watt().value);
    const double idle = s.fractions.eta_e * r0;
    if (idle >= s.lte_rate_floor_bps) {
        CHECK(lte_throughput_single(s) == doctest::Approx(idle).epsilon(1e-12));
    } else {
        CHECK(lte_throughput_single(s) == 0.0);
    }

    // Forcing a high floor zeroes the idle remainder too.
    s.lte_rate_floor_bps = 1e12;
    CHECK(lte_throughput_single(s) == 0.0);
}

TEST_CASE("region classification examples") {
    SingleLinkScene s = base_scene();

    SUBCASE("APs 5 m apart sense each other busy") {
        s.wifi_ap = {0, 0};
        s.wifi_ue = {3, 0};
        s.lte_ap = {5, 0};
        s.lte_ue = {8, 0};
        CHECK(classify_region(s, Tech::wifi) == RegionLabel::cca_busy);
        CHECK(classify_region(s, Tech::lte) == RegionLabel::cca_busy);
    }
    SUBCASE("hidden interferer on top of the UE starves the link") {
        s.wifi_ap = {0, 0};
        s.wifi_ue = {70, 0};
        s.lte_ap = {71, 0};
        s.lte_ue = {75, 0};
        CHECK(classify_region(s, Tech::wifi) == RegionLabel::low_sinr);
        CHECK(wifi_throughput_single(s) == 0.0);
    }
    SUBCASE("distant interferer leaves the link in the high-SINR region") {
        s.wifi_ap = {0, 0};
        s.wifi_ue = {5, 0};
        s.lte_ap = {200, 0};
        s.lte_ue = {205, 0};
        CHECK(classify_region(s, Tech::wifi) == RegionLabel::high_sinr);
        CHECK(wifi_throughput_single(s) > 0.0);
    }
}

TEST_CASE("every scene gets exactly one label; Wi-Fi rate>0 iff HighSinr") {
    std::mt19937_64 rng(42);
    auto coord = [&] { return std::uniform_real_distribution<>(0.0, 120.0)(rng); };
    for (int trial = 0; trial < 500; ++trial) {
        SingleLinkScene s = base_scene();
        s.wifi_ap = {coord(), coord()};
        s.wifi_ue = {coord(), coord()};
        s.lte_ap = {coord(), coord()};
        s.lte_ue = {coord(), coord()};
        const auto label = classify_region(s, Tech::wifi);
        const double rate = wifi_throughput_single(s);
        CHECK((label == RegionLabel::cca_busy || label == RegionLabel::low_sinr ||
               label == RegionLabel::high_sinr));
        CHECK((rate > 0.0) == (label == RegionLabel::high_sinr));
    }
}

TEST_CASE("blend bound: eta_e*R0 <= R_l <= R0 while Wi-Fi is present") {
    std::mt19937_64 rng(43);
    auto coord = [&] { return std::uniform_real_distribution<>(0.0, 120.0)(rng); };
    for (int trial = 0; trial < 500; ++trial) {
        SingleLinkScene s = base_scene();
        s.lte_ap = {coord(), coord()};
        s.lte_ue = {coord(), coord()};
        s.wifi_ap = {coord(), coord()};
        s.wifi_ue = {coord(), coord()};
        if (wifi_channel_energy(s).value > s.cca_threshold_watt().value) {
            continue;
        }
        SingleLinkScene solo = s;
        solo.p_wifi = {0.0};
        const double r0 = lte_throughput_single(solo);
        const double r = lte_throughput_single(s);
        CHECK(r <= r0 * (1.0 + 1e-12));
        CHECK(r >= s.fractions.eta_e * r0 - 1e-9);
    }
}

TEST_CASE("LTE rate does not decrease as the Wi-Fi AP retreats") {
    SingleLinkScene s = base_scene();
    s.lte_ap = {0, 0};
    s.lte_ue = {20, 0};
    double prev = -1.0;
    for (double x = 45.0; x <= 200.0; x += 5.0) {
        s.wifi_ap = {x, 0};
        s.wifi_ue = {x + 5.0, 0};
        if (wifi_channel_energy(s).value > s.cca_threshold_watt().value) {
            prev = -1.0;
            continue;
        }
        const double r = lte_throughput_single(s);
        if (prev >= 0.0) {
            CHECK(r >= prev - 1e-9);
        }
        prev = r;
    }
}

TEST_CASE("Wi-Fi throughput drops to zero exactly at the CCA boundary") {
    SingleLinkScene s = base_scene();
    s.wifi_ap = {0, 0};
    s.wifi_ue = {2, 0};
    // Separation at which the received LTE power equals the threshold.
    const double d_star =
        std::pow(10.0, (20.0 + 62.0 - 22.7 - 26.0 * std::log10(2.4)) / 36.7);
    s.lte_ue = {300, 0};

    s.lte_ap = {d_star * 0.995, 0};
    CHECK(wifi_throughput_single(s) == 0.0);
    s.lte_ap = {d_star * 1.005, 0};
    CHECK(wifi_throughput_single(s) > 0.0);
}
