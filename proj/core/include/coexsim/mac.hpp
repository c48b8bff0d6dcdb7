#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace coexsim {

enum class Tech { wifi, lte };

// Saturated DCF constants, 802.11g ERP-OFDM basic access (no RTS/CTS).
struct MacParams {
    double cw_min = 16.0;          // initial contention window (slots)
    int max_backoff_stages = 6;
    double slot_us = 9.0;
    double sifs_us = 10.0;
    double difs_us = 28.0;
    double header_us = 26.0;       // PHY preamble + signal extension
    double ack_us = 34.0;
    double payload_bits = 12000.0; // 1500-byte frames
    double prop_delay_us = 0.1;
    double data_rate_mbps = 54.0;  // PHY payload rate; sets frame airtime

    void validate() const;  // throws std::invalid_argument
};

struct BianchiResult {
    double tau;     // per-slot transmit probability
    double p_coll;  // conditional collision probability
};

// Fixed point of the standard saturation equations, solved by bisection on
// p to residual < 1e-10. n_stations == 1 short-circuits to the closed form.
BianchiResult bianchi_solve(int n_stations, const MacParams& mac);

struct ChannelTimeFractions {
    double eta_e = 0.0;  // empty (backoff)
    double eta_s = 0.0;  // successful transmission
    double eta_c = 0.0;  // collision
};

// Airtime of a successful exchange / a collision, per Bianchi's accounting.
double success_airtime_us(const MacParams& mac);
double collision_airtime_us(const MacParams& mac);

ChannelTimeFractions channel_time_fractions(int n_stations, const MacParams& mac);

// Saturation throughput in bits/s at the configured rate step.
double bianchi_saturation_throughput_bps(int n_stations, const MacParams& mac);

// Fitted efficiency pair of the rate law alpha * B * log2(1 + beta * S).
struct EffParams {
    double alpha = 1.0;  // (0, 1]
    double beta = 1.0;   // (0, 1]
};

struct AnchorPoint {
    double sinr_db = 0.0;
    double rate_bps = 0.0;
};

struct CalibrationResult {
    EffParams eff;
    double residual = 0.0;  // sum of squared rate errors, (bits/s)^2
};

// Least-squares fit of (alpha, beta) over the anchor curve; beta by log-grid
// plus golden-section refinement, alpha in closed form per beta. Anchors must
// be >= 2 points, strictly increasing in SINR. Throws std::invalid_argument
// on a degenerate curve.
CalibrationResult calibrate_efficiency(Tech tech, std::span<const AnchorPoint> anchors,
                                       double bandwidth_hz);

// Bianchi throughput at the 802.11g rate steps, scaled so the peak matches
// peak_bps (the experimentally observed single-link maximum).
std::vector<AnchorPoint> wifi_default_anchors(const MacParams& mac = {},
                                              double peak_bps = 22.2e6);

// 3GPP 4-bit CQI spectral efficiencies scaled by the bandwidth-efficiency
// ceiling; SINR mapping sinr_db = 2.1*cqi - 8.1 (CQI 1 at -6 dB).
std::vector<AnchorPoint> lte_default_anchors(double bw_efficiency = 0.6,
                                             double bandwidth_hz = 20e6);

// Two-column numeric text (sinr_db, mbps); '#' comments and blank lines skipped.
std::vector<AnchorPoint> load_anchors(std::istream& in);

}  // namespace coexsim
