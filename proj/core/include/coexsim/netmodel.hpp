#pragma once

#include <vector>

#include "coexsim/coexist.hpp"
#include "coexsim/mac.hpp"
#include "coexsim/radio.hpp"

namespace coexsim {

struct ApNode {
    int id = 0;
    Tech tech = Tech::wifi;
    Position pos;
};

struct UeNode {
    int id = 0;
    Position pos;
    int serving_ap = 0;  // AP id
};

struct CcaParams {
    double lambda_c_dbm = -62.0;
    double cs_range_m = 150.0;   // carrier-sense (CSMA) range
    double int_range_m = 210.0;  // interference range
    double zeta = 0.25;          // hidden-node interference parameter
};

// N Wi-Fi + M LTE downlink links; one UE per AP, association fixed.
struct Topology {
    std::vector<ApNode> aps;
    std::vector<UeNode> ues;
    ChannelParams ch;
    EffParams eff_wifi, eff_lte;
    CcaParams cca;
    double smin_wifi = 25.118864315095795;  // 14 dB
    double smin_lte = 2.8183829312644537;   // 4.5 dB
    MacParams mac;            // drives the 1x1 blend reduction
    bool strict_low_sinr = false;
    double lte_rate_floor_bps = 1.8276e6;

    void validate() const;            // throws std::invalid_argument
    int n_links() const { return static_cast<int>(aps.size()); }
    // Index of the UE served by AP index i.
    int ue_of(int ap_index) const;
    std::vector<int> links_of(Tech tech) const;  // AP indices
};

// Wi-Fi AP neighbour sets by AP index. csma = within cs_range; hidden =
// outside cs_range but within int_range. Entries for LTE APs stay empty.
struct CsmaSets {
    std::vector<std::vector<int>> csma;
    std::vector<std::vector<int>> hidden;
};

CsmaSets csma_sets(const Topology& topo);

// a_i = 1/(1+|Ma_i|), b_i = 1/(1+zeta*|Mb_i|); both 1.0 for LTE APs.
struct AccessFactors {
    std::vector<double> a;
    std::vector<double> b;
};

// Throws std::invalid_argument when zeta is outside [0, 1].
AccessFactors access_factors(const CsmaSets& sets, double zeta);

struct PowerAllocation {
    std::vector<double> watts;  // by AP index; 0 = silenced

    static PowerAllocation uniform(int n_links, double watts);
};

// SINR at a Wi-Fi link: LTE interference only (co-channel Wi-Fi is handled
// by the CSMA share a_i, not as interference).
double wifi_sinr_multi(int link, const PowerAllocation& alloc, const Topology& topo);

// SINR at an LTE link: other LTE plus Wi-Fi weighted by its airtime share a_k.
double lte_sinr_multi(int link, const PowerAllocation& alloc, const Topology& topo,
                      const AccessFactors& factors);

// Channel energy at Wi-Fi AP `link`: LTE + hidden-zone Wi-Fi + noise.
double wifi_channel_energy_multi(int link, const PowerAllocation& alloc,
                                 const Topology& topo, const CsmaSets& sets);

struct LinkReport {
    int link_id = 0;
    Tech tech = Tech::wifi;
    double sinr = 0.0;
    double rate_bps = 0.0;
    RegionLabel region = RegionLabel::high_sinr;
};

struct TechStats {
    double mean_bps = 0.0;
    double p10_bps = 0.0;
};

struct ThroughputReport {
    std::vector<LinkReport> links;  // in AP-index order
    TechStats wifi, lte;
};

// Per-link rates under a given allocation. Wi-Fi links: hard CCA gate, then
// a_i*b_i-scaled rate gated by smin. LTE links: Eq.-6 SINR rate gated by
// smin. The degenerate 1 Wi-Fi + 1 LTE topology reproduces the single-link
// models exactly (time blend included).
ThroughputReport evaluate_throughput(const Topology& topo, const PowerAllocation& alloc);

// Nearest-rank 10th percentile (1-based rank ceil(0.1 n)).
double nearest_rank_p10(std::vector<double> values);

}  // namespace coexsim
