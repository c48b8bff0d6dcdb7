#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "coexsim/radio.hpp"

using namespace coexsim;

TEST_CASE("path loss matches the deployment formula") {
    ChannelParams ch;
    ch.freq_ghz = 1.0;
    CHECK(path_loss_db(1.0, ch) == doctest::Approx(22.7).epsilon(1e-12));

    ch.freq_ghz = 2.4;
    CHECK(path_loss_db(10.0, ch) == doctest::Approx(69.2855).epsilon(1e-4));
    // 36.7*2 + 22.7 + 26*log10(2.4)
    CHECK(path_loss_db(100.0, ch) == doctest::Approx(105.98549).epsilon(1e-6));
}

TEST_CASE("distances below the clamp behave like the clamp") {
    ChannelParams ch;
    CHECK(path_loss_db(0.0, ch) == path_loss_db(ch.min_distance_m, ch));
    CHECK(path_loss_db(0.1, ch) == path_loss_db(0.25, ch));
}

TEST_CASE("path loss is strictly increasing beyond the clamp") {
    ChannelParams ch;
    double prev = path_loss_db(ch.min_distance_m, ch);
    for (double d = 0.5; d < 300.0; d *= 1.7) {
        const double pl = path_loss_db(d, ch);
        CHECK(pl > prev);
        prev = pl;
    }
}

TEST_CASE("channel gain is symmetric and matches the clamped formula") {
    ChannelParams ch;
    ch.freq_ghz = 1.0;
    const Position a{3.0, 4.0}, b{3.0, 4.0};
    const double expected =
        std::pow(10.0, -(22.7 + 36.7 * std::log10(0.25)) / 10.0);
    CHECK(channel_gain(a, b, ch).value == doctest::Approx(expected).epsilon(1e-12));

    ch.freq_ghz = 2.4;
    const Position c{0.0, 0.0}, d{6.0, 8.0};
    CHECK(channel_gain(c, d, ch).value ==
          doctest::Approx(1.179e-7).epsilon(1e-3));
    CHECK(channel_gain(c, d, ch).value == channel_gain(d, c, ch).value);
}

TEST_CASE("extra loss shifts every gain") {
    ChannelParams ch;
    ChannelParams lossy = ch;
    lossy.extra_loss_db = 10.0;
    const Position a{0, 0}, b{25, 0};
    CHECK(channel_gain(a, b, lossy).value ==
          doctest::Approx(channel_gain(a, b, ch).value / 10.0).epsilon(1e-12));
}

TEST_CASE("sinr reduces to snr and handles dBm arithmetic") {
    const PowerWatt noise{1e-10};
    CHECK(sinr({1e-10}, {1.0}, {}, noise) == doctest::Approx(1.0).epsilon(1e-15));

    // Interferer identical to the signal: ratio -> 1 as noise -> 0.
    const Interferer twin{{0.02}, {1e-7}};
    const std::vector<Interferer> one{twin};
    CHECK(sinr({0.02}, {1e-7}, one, {1e-30}) == doctest::Approx(1.0).epsilon(1e-12));

    // 20 dBm - 69.285 dB - (-101 dBm) = 51.715 dB.
    const double p = to_watt(PowerDbm{20.0}).value;
    const double g = std::pow(10.0, -69.285 / 10.0);
    const double s = sinr({p}, {g}, {}, to_watt(PowerDbm{-101.0}));
    CHECK(s == doctest::Approx(1.4843e5).epsilon(1e-3));
}

TEST_CASE("sinr is invariant under joint power scaling") {
    std::mt19937_64 rng(7);
    auto u = [&] { return std::uniform_real_distribution<>(0.1, 10.0)(rng); };
    for (int trial = 0; trial < 200; ++trial) {
        const PowerWatt p{u()};
        const LinearGain g{u() * 1e-6};
        std::vector<Interferer> ints;
        const int k = static_cast<int>(rng() % 4);
        for (int i = 0; i < k; ++i) {
            ints.push_back({{u()}, {u() * 1e-6}});
        }
        const PowerWatt noise{u() * 1e-9};
        const double base = sinr(p, g, ints, noise);
        for (double c : {1e-6, 3.7, 1e9}) {
            std::vector<Interferer> scaled = ints;
            for (auto& it : scaled) {
                it.power.value *= c;
            }
            const double s = sinr({p.value * c}, g, scaled, {noise.value * c});
            CHECK(std::abs(s / base - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("sinr is monotone in signal and interference") {
    const std::vector<Interferer> weak{{{0.01}, {1e-8}}};
    const std::vector<Interferer> strong{{{0.02}, {1e-8}}};
    const PowerWatt noise{1e-11};
    const double s_weak = sinr({0.05}, {1e-7}, weak, noise);
    const double s_strong = sinr({0.05}, {1e-7}, strong, noise);
    CHECK(s_strong < s_weak);
    CHECK(sinr({0.06}, {1e-7}, weak, noise) > s_weak);
}

TEST_CASE("dBm/watt round trip is exact to 1e-12") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const double dbm = std::uniform_real_distribution<>(-120.0, 40.0)(rng);
        const double back = to_dbm(to_watt(PowerDbm{dbm})).value;
        CHECK(std::abs(back - dbm) < 1e-12 * std::max(1.0, std::abs(dbm)));
    }
    CHECK(to_watt(PowerDbm{0.0}).value == doctest::Approx(1e-3).epsilon(1e-15));
}

TEST_CASE("channel parameter validation") {
    ChannelParams ch;
    CHECK_NOTHROW(ch.validate());

    ChannelParams bad_bw = ch;
    bad_bw.bandwidth_hz = 0.0;
    CHECK_THROWS_AS(bad_bw.validate(), std::invalid_argument);

    ChannelParams low_noise = ch;
    low_noise.noise_floor_dbm = -130.0;  // below thermal for 20 MHz
    CHECK_THROWS_AS(low_noise.validate(), std::invalid_argument);

    ChannelParams high_noise = ch;
    high_noise.noise_floor_dbm = -80.0;  // > 15 dB noise figure
    CHECK_THROWS_AS(high_noise.validate(), std::invalid_argument);

    // -101 dBm over 20 MHz is thermal noise with a 0 dB noise figure.
    CHECK(-174.0 + 10.0 * std::log10(ch.bandwidth_hz) ==
          doctest::Approx(ch.noise_floor_dbm).epsilon(1e-4));
}
