#pragma once

// Independent oracles used by the unit and acceptance suites. These stay
// deliberately separate from the library implementation paths they check.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "coexsim/mac.hpp"
#include "coexsim/netmodel.hpp"
#include "coexsim/radio.hpp"

namespace oracles {

// Slotted saturation-backoff simulation of the DCF contention process.
// Counts per-station transmit attempts per backoff slot and collision
// outcomes; airtime accounting uses the same slot durations as the model.
struct BackoffStats {
    double tau = 0.0;
    double p_coll = 0.0;
    double eta_e = 0.0, eta_s = 0.0, eta_c = 0.0;
    double throughput_bps = 0.0;
};

inline BackoffStats simulate_backoff(int n_stations, const coexsim::MacParams& mac,
                                     long n_slots, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int w0 = static_cast<int>(mac.cw_min);
    auto draw = [&](int stage) {
        const int w = w0 << stage;  // window doubles per stage
        return static_cast<int>(rng() % static_cast<std::uint64_t>(w));
    };
    std::vector<int> backoff(n_stations), stage(n_stations, 0);
    for (int i = 0; i < n_stations; ++i) {
        backoff[i] = draw(0);
    }
    long attempts = 0, collisions = 0, successes = 0, coll_events = 0;
    long empty_slots = 0;
    long station_slots = 0;
    for (long s = 0; s < n_slots; ++s) {
        station_slots += n_stations;
        int tx_count = 0, tx_station = -1;
        for (int i = 0; i < n_stations; ++i) {
            if (backoff[i] == 0) {
                ++tx_count;
                tx_station = i;
            }
        }
        if (tx_count == 0) {
            ++empty_slots;
            for (int i = 0; i < n_stations; ++i) {
                --backoff[i];
            }
            continue;
        }
        attempts += tx_count;
        if (tx_count == 1) {
            ++successes;
            stage[tx_station] = 0;
            backoff[tx_station] = draw(0);
        } else {
            collisions += tx_count;
            ++coll_events;
            for (int i = 0; i < n_stations; ++i) {
                if (backoff[i] == 0) {
                    stage[i] = std::min(stage[i] + 1, mac.max_backoff_stages);
                    backoff[i] = draw(stage[i]);
                }
            }
        }
        for (int i = 0; i < n_stations; ++i) {
            if (backoff[i] > 0) {
                --backoff[i];
            }
        }
    }
    BackoffStats out;
    out.tau = static_cast<double>(attempts) / static_cast<double>(station_slots);
    out.p_coll = attempts > 0
                     ? static_cast<double>(collisions) / static_cast<double>(attempts)
                     : 0.0;
    const double ts = coexsim::success_airtime_us(mac);
    const double tc = coexsim::collision_airtime_us(mac);
    const double t_empty = static_cast<double>(empty_slots) * mac.slot_us;
    const double t_succ = static_cast<double>(successes) * ts;
    const double t_coll = static_cast<double>(coll_events) * tc;
    const double total = t_empty + t_succ + t_coll;
    out.eta_e = t_empty / total;
    out.eta_s = t_succ / total;
    out.eta_c = t_coll / total;
    out.throughput_bps =
        static_cast<double>(successes) * mac.payload_bits / total * 1e6;
    return out;
}

// Dense log-grid search over a 1 Wi-Fi + 1 LTE power-control instance.
// Returns the best feasible objective (same weighting as the solver) or
// -inf when no grid point is feasible.
struct GridBest {
    bool feasible = false;
    double objective = 0.0;
    double p_wifi = 0.0, p_lte = 0.0;
};

inline GridBest grid_search_1x1(const coexsim::Topology& topo, double p_min,
                                double p_max, double smin_wifi, double smin_lte,
                                int k = 400) {
    using namespace coexsim;
    const int wifi =topo.links_of(Tech::wifi).at(0);
    const int lte = topo.links_of(Tech::lte).at(0);
    const int wifi_ue = topo.ue_of(wifi);
    const int lte_ue = topo.ue_of(lte);
    const double g_w =
        channel_gain(topo.aps[wifi].pos, topo.ues[wifi_ue].pos, topo.ch).value;
    const double g_wl =
        channel_gain(topo.aps[lte].pos, topo.ues[wifi_ue].pos, topo.ch).value;
    const double g_l =
        channel_gain(topo.aps[lte].pos, topo.ues[lte_ue].pos, topo.ch).value;
    const double g_lw =
        channel_gain(topo.aps[wifi].pos, topo.ues[lte_ue].pos, topo.ch).value;
    const double g_ap =
        channel_gain(topo.aps[wifi].pos, topo.aps[lte].pos, topo.ch).value;
    const double noise = topo.ch.noise_watt().value;
    const double lambda =
        to_watt(PowerDbm{topo.cca.lambda_c_dbm}).value * (1.0 - 1e-6);

    GridBest best;
    best.objective = -std::numeric_limits<double>::infinity();
    const double lo = std::log(p_min), hi = std::log(p_max);
    for (int i = 0; i < k; ++i) {
        const double pw = std::exp(lo + (hi - lo) * i / (k - 1));
        for (int j = 0; j < k; ++j) {
            const double pl = std::exp(lo + (hi - lo) * j / (k - 1));
            if (pl * g_ap + noise > lambda) {
                continue;
            }
            const double s_w = pw * g_w / (pl * g_wl + noise);
            const double s_l = pl * g_l / (pw * g_lw + noise);
            if (s_w < smin_wifi || s_l < smin_lte) {
                continue;
            }
            const double obj = topo.eff_wifi.alpha * std::log(topo.eff_wifi.beta * s_w) +
                               topo.eff_lte.alpha * std::log(topo.eff_lte.beta * s_l);
            if (obj > best.objective) {
                best = {true, obj, pw, pl};
            }
        }
    }
    return best;
}

}  // namespace oracles
