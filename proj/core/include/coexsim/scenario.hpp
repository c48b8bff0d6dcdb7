#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coexsim/netmodel.hpp"
#include "coexsim/optimizer.hpp"

namespace coexsim {

enum class Scheme { none, power_control, time_division };

const char* to_string(Scheme scheme);

// Everything the experiment engine needs besides the geometry.
struct SystemParams {
    ChannelParams ch;
    MacParams mac;
    EffParams eff_wifi, eff_lte;
    CcaParams cca;
    double smin_wifi_db = 14.0;
    double smin_lte_db = 4.5;
    bool strict_low_sinr = false;
    double lte_rate_floor_bps = 1.8276e6;
    PowerDbm tx_power{20.0};   // uncoordinated transmit power
    RateConstraints constraints;

    // Table-I defaults with (alpha, beta) calibrated from the default
    // anchor tables.
    static SystemParams paper_defaults();

    double smin_wifi() const { return db_to_ratio(smin_wifi_db); }
    double smin_lte() const { return db_to_ratio(smin_lte_db); }
};

// Single-link coexistence sweep over the (d_A, d_I) plane. The victim UE
// sits at the origin, its AP at (d_A, 0), the interfering AP at (d_I, 0)
// with d_I signed; the interferer's own UE mirrors the link distance d_A
// outward (it only matters under coordination).
struct SweepConfig {
    double d_a_min = 0.0, d_a_max = 100.0, d_a_step = 2.0;
    double d_i_min = -100.0, d_i_max = 100.0, d_i_step = 2.0;
    Tech perspective = Tech::wifi;

    void validate() const;  // throws std::invalid_argument
};

struct SweepCell {
    double d_a = 0.0;
    double d_i = 0.0;
    double rate_bps = 0.0;
    double standalone_bps = 0.0;  // perspective link alone at tx power
    RegionLabel region = RegionLabel::high_sinr;
};

struct SweepGrid {
    std::vector<double> d_a_values;
    std::vector<double> d_i_values;
    std::vector<SweepCell> cells;  // row-major, d_a outer

    const SweepCell& at(size_t ia, size_t ii) const {
        return cells[ia * d_i_values.size() + ii];
    }
};

SweepGrid single_link_sweep(const SweepConfig& cfg, const SystemParams& params,
                            Scheme scheme);

struct SweepSummary {
    double zero_fraction = 0.0;
    double mean_degradation = 0.0;  // vs per-cell standalone rate
    double frac_cca = 0.0;
    double frac_low = 0.0;
    double frac_high = 0.0;
};

SweepSummary summarize_sweep(const SweepGrid& grid);

// Random multi-link deployments of §-VII shape: equal Wi-Fi and LTE link
// counts, APs uniform in a square area, each UE uniform in a disk around
// its AP. Fully determined by (rng_seed, topology index).
struct MonteCarloConfig {
    int n_links_per_rat = 2;
    double area_m = 200.0;
    int n_topologies = 10;
    std::uint64_t rng_seed = 1;
    double assoc_radius_m = 50.0;

    void validate() const;
};

Topology random_topology(const MonteCarloConfig& cfg, int topology_index,
                         const SystemParams& params);

struct CoordinationOutcome {
    ThroughputReport report;
    double eta = 0.5;                       // meaningful for time division
    OptStatus status = OptStatus::optimal;  // meaningful for power control
    int n_dropped_lte = 0;
};

CoordinationOutcome evaluate_coordination(const Topology& topo, Scheme scheme,
                                          const SystemParams& params);

// Pooled per-link statistics across reports.
struct PooledStats {
    TechStats wifi, lte;
};

PooledStats aggregate_stats(std::span<const ThroughputReport> reports);

// Topology construction shared by sweeps and tests.
Topology make_1x1_topology(Position wifi_ap, Position wifi_ue, Position lte_ap,
                           Position lte_ue, const SystemParams& params);

}  // namespace coexsim
