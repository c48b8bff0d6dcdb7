#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "coexsim/scenario.hpp"

namespace coexsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full experiment configuration. An empty document runs the paper-default
// experiment; unknown keys are rejected.
struct RunConfig {
    std::uint64_t seed = 1;

    ChannelParams channel;
    MacParams mac;

    // (alpha, beta) <= 0 means "calibrate from the default anchor tables".
    double wifi_alpha = 0.0, wifi_beta = 0.0;
    double lte_alpha = 0.0, lte_beta = 0.0;
    double lte_bw_efficiency = 0.6;
    double wifi_peak_mbps = 22.2;

    CcaParams cca;

    double p_max_dbm = 20.0;
    double p_min_dbm = -30.0;
    double tx_power_dbm = 20.0;
    double min_sinr_wifi_db = 14.0;
    double min_sinr_lte_db = 4.5;
    bool strict_low_sinr = false;

    SweepConfig sweep;
    MonteCarloConfig montecarlo;
    std::vector<Scheme> schemes = {Scheme::none, Scheme::power_control,
                                   Scheme::time_division};

    static RunConfig defaults();
    // Strict JSON load; throws ConfigError with a line-anchored message on
    // malformed documents and a key-path message on unknown keys.
    static RunConfig load(const std::filesystem::path& path);
    static RunConfig parse(const std::string& text, const std::string& origin);

    // Derived engine parameters (runs calibration when alpha/beta are auto).
    SystemParams system_params() const;
};

}  // namespace coexsim
