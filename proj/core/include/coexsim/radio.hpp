#pragma once

#include <span>
#include <utility>

namespace coexsim {

struct Position {
    double x = 0.0;
    double y = 0.0;
};

double distance_m(const Position& a, const Position& b);

// Scalar power carriers. All internal arithmetic is in linear watts; dBm only
// appears at configuration and reporting boundaries.
struct PowerDbm {
    double value = 0.0;
};
struct PowerWatt {
    double value = 0.0;
};

PowerWatt to_watt(PowerDbm p);
PowerDbm to_dbm(PowerWatt p);

double db_to_ratio(double db);
double ratio_to_db(double ratio);

// Dimensionless power ratio in (0, 1]. Zero gain is excluded so log-domain
// machinery stays finite; the distance clamp below guarantees it.
struct LinearGain {
    double value = 1.0;
};

struct ChannelParams {
    double freq_ghz = 2.4;
    double pl_dist_coeff = 36.7;   // dB per decade of distance
    double pl_const = 22.7;        // dB offset
    double pl_freq_coeff = 26.0;   // dB per decade of carrier frequency
    double noise_floor_dbm = -101.0;
    double bandwidth_hz = 20e6;
    double min_distance_m = 0.25;  // clamp; keeps gain finite at d = 0
    double extra_loss_db = 0.0;    // antenna/cable/wall hook
    // Recorded deployment geometry; the path-loss model takes ground distance
    // only, so these do not enter any computation.
    double ap_antenna_height_m = 10.0;
    double ue_antenna_height_m = 1.0;

    PowerWatt noise_watt() const;
    // Throws std::invalid_argument when bandwidth/frequency are non-positive
    // or the noise floor is inconsistent with -174 dBm/Hz thermal noise plus
    // at most max_noise_figure_db.
    void validate(double max_noise_figure_db = 15.0) const;
};

double path_loss_db(double distance_m, const ChannelParams& ch);
LinearGain channel_gain(const Position& a, const Position& b, const ChannelParams& ch);

struct Interferer {
    PowerWatt power;
    LinearGain gain;
};

// Generalized SINR: p*g / (sum of interferer powers*gains + noise).
// Empty interferer list reduces to plain SNR.
double sinr(PowerWatt p_sig, LinearGain g_sig, std::span<const Interferer> interferers,
            PowerWatt noise);

}  // namespace coexsim
