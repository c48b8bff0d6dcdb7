#include "coexsim/coexist.hpp"

#include <cmath>

namespace coexsim {

const char* to_string(RegionLabel label) {
    switch (label) {
        case RegionLabel::high_sinr: return "HighSinr";
        case RegionLabel::low_sinr: return "LowSinr";
        case RegionLabel::cca_busy: return "CcaBusy";
    }
    return "?";
}

double shannon_rate_bps(const EffParams& eff, double bandwidth_hz, double sinr_lin) {
    return eff.alpha * bandwidth_hz * std::log2(1.0 + eff.beta * sinr_lin);
}

double gated_rate_bps(const EffParams& eff, double bandwidth_hz, double sinr_lin,
                      double smin) {
    if (sinr_lin < smin) {
        return 0.0;
    }
    return shannon_rate_bps(eff, bandwidth_hz, sinr_lin);
}

PowerWatt wifi_channel_energy(const SingleLinkScene& scene) {
    const double g = channel_gain(scene.lte_ap, scene.wifi_ap, scene.ch).value;
    return {scene.p_lte.value * g + scene.ch.noise_watt().value};
}

namespace {

struct SceneGains {
    double g_w;    // wifi AP -> wifi UE
    double g_wl;   // lte AP  -> wifi UE
    double g_l;    // lte AP  -> lte UE
    double g_lw;   // wifi AP -> lte UE
    double noise;
};

SceneGains gains_of(const SingleLinkScene& s) {
    return {channel_gain(s.wifi_ap, s.wifi_ue, s.ch).value,
            channel_gain(s.lte_ap, s.wifi_ue, s.ch).value,
            channel_gain(s.lte_ap, s.lte_ue, s.ch).value,
            channel_gain(s.wifi_ap, s.lte_ue, s.ch).value,
            s.ch.noise_watt().value};
}

}  // namespace

double wifi_throughput_single(const SingleLinkScene& scene) {
    const auto g = gains_of(scene);
    const double bw = scene.ch.bandwidth_hz;
    if (scene.p_lte.value <= 0.0) {
        const double snr = scene.p_wifi.value * g.g_w / g.noise;
        return gated_rate_bps(scene.eff_wifi, bw, snr, scene.smin_wifi);
    }
    if (wifi_channel_energy(scene).value > scene.cca_threshold_watt().value) {
        return 0.0;  // channel sensed busy, no Wi-Fi transmission
    }
    const double s = scene.p_wifi.value * g.g_w / (scene.p_lte.value * g.g_wl + g.noise);
    return gated_rate_bps(scene.eff_wifi, bw, s, scene.smin_wifi);
}

double lte_throughput_single(const SingleLinkScene& scene) {
    const auto g = gains_of(scene);
    const double bw = scene.ch.bandwidth_hz;
    const double snr = scene.p_lte.value * g.g_l / g.noise;
    const double r_no_wifi = gated_rate_bps(scene.eff_lte, bw, snr, scene.smin_lte);
    if (scene.p_wifi.value <= 0.0) {
        return r_no_wifi;
    }
    if (wifi_channel_energy(scene).value > scene.cca_threshold_watt().value) {
        return r_no_wifi;  // Wi-Fi silenced; LTE sees no interference
    }
    // Interfered fraction uses the Wi-Fi transmit power over the
    // (Wi-Fi AP -> LTE UE) gain; the blend weights come from Eq.-3 shares
    // with eta_c = 0 for a single Wi-Fi.
    const double s_int =
        scene.p_lte.value * g.g_l / (scene.p_wifi.value * g.g_lw + g.noise);
    if (s_int < scene.smin_lte) {
        if (scene.strict_low_sinr) {
            return 0.0;
        }
        const double idle_part = scene.fractions.eta_e * r_no_wifi;
        return idle_part >= scene.lte_rate_floor_bps ? idle_part : 0.0;
    }
    const double r_int = shannon_rate_bps(scene.eff_lte, bw, s_int);
    return scene.fractions.eta_e * r_no_wifi + scene.fractions.eta_s * r_int;
}

RegionLabel classify_region(const SingleLinkScene& scene, Tech perspective) {
    const auto g = gains_of(scene);
    const bool both_present = scene.p_wifi.value > 0.0 && scene.p_lte.value > 0.0;
    if (both_present &&
        wifi_channel_energy(scene).value > scene.cca_threshold_watt().value) {
        return RegionLabel::cca_busy;
    }
    double s, smin;
    if (perspective == Tech::wifi) {
        s = scene.p_wifi.value * g.g_w / (scene.p_lte.value * g.g_wl + g.noise);
        smin = scene.smin_wifi;
    } else {
        s = scene.p_lte.value * g.g_l / (scene.p_wifi.value * g.g_lw + g.noise);
        smin = scene.smin_lte;
    }
    return s < smin ? RegionLabel::low_sinr : RegionLabel::high_sinr;
}

}  // namespace coexsim
