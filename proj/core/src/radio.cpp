#include "coexsim/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace coexsim {

double distance_m(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

PowerWatt to_watt(PowerDbm p) {
    return {1e-3 * std::pow(10.0, p.value / 10.0)};
}

PowerDbm to_dbm(PowerWatt p) {
    return {10.0 * std::log10(p.value / 1e-3)};
}

double db_to_ratio(double db) {
    return std::pow(10.0, db / 10.0);
}

double ratio_to_db(double ratio) {
    return 10.0 * std::log10(ratio);
}

PowerWatt ChannelParams::noise_watt() const {
    return to_watt(PowerDbm{noise_floor_dbm});
}

void ChannelParams::validate(double max_noise_figure_db) const {
    if (bandwidth_hz <= 0.0) {
        throw std::invalid_argument("ChannelParams: bandwidth_hz must be > 0");
    }
    if (freq_ghz <= 0.0) {
        throw std::invalid_argument("ChannelParams: freq_ghz must be > 0");
    }
    if (min_distance_m <= 0.0) {
        throw std::invalid_argument("ChannelParams: min_distance_m must be > 0");
    }
    const double thermal_dbm = -174.0 + 10.0 * std::log10(bandwidth_hz);
    if (noise_floor_dbm < thermal_dbm - 0.5 ||
        noise_floor_dbm > thermal_dbm + max_noise_figure_db) {
        throw std::invalid_argument(
            "ChannelParams: noise_floor_dbm inconsistent with -174 dBm/Hz thermal noise");
    }
}

double path_loss_db(double distance_m, const ChannelParams& ch) {
    const double d = std::max(distance_m, ch.min_distance_m);
    return ch.pl_dist_coeff * std::log10(d) + ch.pl_const +
           ch.pl_freq_coeff * std::log10(ch.freq_ghz) + ch.extra_loss_db;
}

LinearGain channel_gain(const Position& a, const Position& b, const ChannelParams& ch) {
    return {std::pow(10.0, -path_loss_db(distance_m(a, b), ch) / 10.0)};
}

double sinr(PowerWatt p_sig, LinearGain g_sig, std::span<const Interferer> interferers,
            PowerWatt noise) {
    double denom = noise.value;
    for (const auto& it : interferers) {
        denom += it.power.value * it.gain.value;
    }
    return p_sig.value * g_sig.value / denom;
}

}  // namespace coexsim
