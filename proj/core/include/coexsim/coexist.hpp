#pragma once

#include "coexsim/mac.hpp"
#include "coexsim/radio.hpp"

namespace coexsim {

enum class RegionLabel { high_sinr, low_sinr, cca_busy };

const char* to_string(RegionLabel label);

// Co-channel single Wi-Fi / single LTE downlink scene. A transmit power of
// exactly zero means that network is absent.
struct SingleLinkScene {
    Position wifi_ap, wifi_ue, lte_ap, lte_ue;
    PowerWatt p_wifi{0.1};
    PowerWatt p_lte{0.1};
    ChannelParams ch;
    EffParams eff_wifi;
    EffParams eff_lte;
    double cca_threshold_dbm = -62.0;
    double smin_wifi = 25.118864315095795;  // 14 dB, linear
    double smin_lte = 2.8183829312644537;   // 4.5 dB, linear
    ChannelTimeFractions fractions;          // n = 1 DCF shares
    bool strict_low_sinr = false;            // zero the whole blend in LowSinr
    double lte_rate_floor_bps = 1.8276e6;    // CQI-1 rate at defaults

    PowerWatt cca_threshold_watt() const { return to_watt(PowerDbm{cca_threshold_dbm}); }
};

// Rate law alpha*B*log2(1 + beta*s), no minimum-SINR gate.
double shannon_rate_bps(const EffParams& eff, double bandwidth_hz, double sinr_lin);

// Same with the gate: zero below smin.
double gated_rate_bps(const EffParams& eff, double bandwidth_hz, double sinr_lin,
                      double smin);

// Channel energy sensed at the Wi-Fi AP: LTE interference + noise.
PowerWatt wifi_channel_energy(const SingleLinkScene& scene);

double wifi_throughput_single(const SingleLinkScene& scene);  // bits/s
double lte_throughput_single(const SingleLinkScene& scene);   // bits/s

// Exclusive three-way region label; CcaBusy takes precedence over LowSinr.
RegionLabel classify_region(const SingleLinkScene& scene, Tech perspective);

}  // namespace coexsim
