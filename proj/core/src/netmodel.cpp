#include "coexsim/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace coexsim {

void Topology::validate() const {
    if (aps.size() != ues.size()) {
        throw std::invalid_argument("Topology: need exactly one UE per AP");
    }
    std::unordered_map<int, int> ap_by_id;
    for (size_t i = 0; i < aps.size(); ++i) {
        if (!ap_by_id.emplace(aps[i].id, static_cast<int>(i)).second) {
            throw std::invalid_argument("Topology: duplicate AP id");
        }
    }
    std::vector<bool> served(aps.size(), false);
    for (const auto& ue : ues) {
        auto it = ap_by_id.find(ue.serving_ap);
        if (it == ap_by_id.end()) {
            throw std::invalid_argument("Topology: UE references unknown AP id");
        }
        if (served[it->second]) {
            throw std::invalid_argument("Topology: AP serves more than one UE");
        }
        served[it->second] = true;
    }
    if (cca.cs_range_m >= cca.int_range_m) {
        throw std::invalid_argument("Topology: cs_range_m must be < int_range_m");
    }
}

int Topology::ue_of(int ap_index) const {
    const int ap_id = aps[ap_index].id;
    for (size_t k = 0; k < ues.size(); ++k) {
        if (ues[k].serving_ap == ap_id) {
            return static_cast<int>(k);
        }
    }
    throw std::invalid_argument("Topology: AP has no UE");
}

std::vector<int> Topology::links_of(Tech tech) const {
    std::vector<int> out;
    for (size_t i = 0; i < aps.size(); ++i) {
        if (aps[i].tech == tech) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

CsmaSets csma_sets(const Topology& topo) {
    const int n = topo.n_links();
    CsmaSets sets;
    sets.csma.resize(n);
    sets.hidden.resize(n);
    for (int i = 0; i < n; ++i) {
        if (topo.aps[i].tech != Tech::wifi) {
            continue;
        }
        for (int j = 0; j < n; ++j) {
            if (j == i || topo.aps[j].tech != Tech::wifi) {
                continue;
            }
            const double d = distance_m(topo.aps[i].pos, topo.aps[j].pos);
            if (d <= topo.cca.cs_range_m) {
                sets.csma[i].push_back(j);
            } else if (d <= topo.cca.int_range_m) {
                sets.hidden[i].push_back(j);
            }
        }
    }
    return sets;
}

AccessFactors access_factors(const CsmaSets& sets, double zeta) {
    if (zeta < 0.0 || zeta > 1.0) {
        throw std::invalid_argument("access_factors: zeta must be in [0, 1]");
    }
    const size_t n = sets.csma.size();
    AccessFactors f;
    f.a.assign(n, 1.0);
    f.b.assign(n, 1.0);
    for (size_t i = 0; i < n; ++i) {
        f.a[i] = 1.0 / (1.0 + static_cast<double>(sets.csma[i].size()));
        f.b[i] = 1.0 / (1.0 + zeta * static_cast<double>(sets.hidden[i].size()));
    }
    return f;
}

PowerAllocation PowerAllocation::uniform(int n_links, double watts) {
    PowerAllocation alloc;
    alloc.watts.assign(n_links, watts);
    return alloc;
}

namespace {

double gain_ap_to_ue(const Topology& topo, int ap_index, int ue_index) {
    return channel_gain(topo.aps[ap_index].pos, topo.ues[ue_index].pos, topo.ch).value;
}

double gain_ap_to_ap(const Topology& topo, int a, int b) {
    return channel_gain(topo.aps[a].pos, topo.aps[b].pos, topo.ch).value;
}

}  // namespace

double wifi_sinr_multi(int link, const PowerAllocation& alloc, const Topology& topo) {
    const int ue = topo.ue_of(link);
    double denom = topo.ch.noise_watt().value;
    for (int j = 0; j < topo.n_links(); ++j) {
        if (topo.aps[j].tech == Tech::lte) {
            denom += alloc.watts[j] * gain_ap_to_ue(topo, j, ue);
        }
    }
    return alloc.watts[link] * gain_ap_to_ue(topo, link, ue) / denom;
}

double lte_sinr_multi(int link, const PowerAllocation& alloc, const Topology& topo,
                      const AccessFactors& factors) {
    const int ue = topo.ue_of(link);
    double denom = topo.ch.noise_watt().value;
    for (int j = 0; j < topo.n_links(); ++j) {
        if (j == link) {
            continue;
        }
        const double g = gain_ap_to_ue(topo, j, ue);
        if (topo.aps[j].tech == Tech::lte) {
            denom += alloc.watts[j] * g;
        } else {
            denom += factors.a[j] * alloc.watts[j] * g;
        }
    }
    return alloc.watts[link] * gain_ap_to_ue(topo, link, ue) / denom;
}

double wifi_channel_energy_multi(int link, const PowerAllocation& alloc,
                                 const Topology& topo, const CsmaSets& sets) {
    double energy = topo.ch.noise_watt().value;
    for (int j = 0; j < topo.n_links(); ++j) {
        if (topo.aps[j].tech == Tech::lte) {
            energy += alloc.watts[j] * gain_ap_to_ap(topo, link, j);
        }
    }
    for (int j : sets.hidden[link]) {
        energy += alloc.watts[j] * gain_ap_to_ap(topo, link, j);
    }
    return energy;
}

namespace {

TechStats tech_stats(const std::vector<LinkReport>& links, Tech tech) {
    std::vector<double> rates;
    for (const auto& l : links) {
        if (l.tech == tech) {
            rates.push_back(l.rate_bps);
        }
    }
    if (rates.empty()) {
        return {};
    }
    double sum = 0.0;
    for (double r : rates) {
        sum += r;
    }
    return {sum / static_cast<double>(rates.size()), nearest_rank_p10(rates)};
}

// 1 Wi-Fi + 1 LTE reduces to the single-link models, blend included.
ThroughputReport evaluate_1x1(const Topology& topo, const PowerAllocation& alloc,
                              int wifi_link, int lte_link) {
    SingleLinkScene scene;
    scene.wifi_ap = topo.aps[wifi_link].pos;
    scene.wifi_ue = topo.ues[topo.ue_of(wifi_link)].pos;
    scene.lte_ap = topo.aps[lte_link].pos;
    scene.lte_ue = topo.ues[topo.ue_of(lte_link)].pos;
    scene.p_wifi = {alloc.watts[wifi_link]};
    scene.p_lte = {alloc.watts[lte_link]};
    scene.ch = topo.ch;
    scene.eff_wifi = topo.eff_wifi;
    scene.eff_lte = topo.eff_lte;
    scene.cca_threshold_dbm = topo.cca.lambda_c_dbm;
    scene.smin_wifi = topo.smin_wifi;
    scene.smin_lte = topo.smin_lte;
    scene.fractions = channel_time_fractions(1, topo.mac);
    scene.strict_low_sinr = topo.strict_low_sinr;
    scene.lte_rate_floor_bps = topo.lte_rate_floor_bps;

    ThroughputReport rep;
    rep.links.resize(2);
    const double noise = topo.ch.noise_watt().value;
    for (int idx : {wifi_link, lte_link}) {
        LinkReport lr;
        lr.link_id = topo.aps[idx].id;
        lr.tech = topo.aps[idx].tech;
        if (lr.tech == Tech::wifi) {
            const double g_sig = channel_gain(scene.wifi_ap, scene.wifi_ue, topo.ch).value;
            const double g_int = channel_gain(scene.lte_ap, scene.wifi_ue, topo.ch).value;
            lr.sinr = scene.p_wifi.value * g_sig / (scene.p_lte.value * g_int + noise);
            lr.rate_bps = wifi_throughput_single(scene);
            lr.region = classify_region(scene, Tech::wifi);
        } else {
            const double g_sig = channel_gain(scene.lte_ap, scene.lte_ue, topo.ch).value;
            const double g_int = channel_gain(scene.wifi_ap, scene.lte_ue, topo.ch).value;
            lr.sinr = scene.p_lte.value * g_sig / (scene.p_wifi.value * g_int + noise);
            lr.rate_bps = lte_throughput_single(scene);
            lr.region = classify_region(scene, Tech::lte);
        }
        rep.links[idx] = lr;
    }
    rep.wifi = tech_stats(rep.links, Tech::wifi);
    rep.lte = tech_stats(rep.links, Tech::lte);
    return rep;
}

}  // namespace

ThroughputReport evaluate_throughput(const Topology& topo, const PowerAllocation& alloc) {
    if (static_cast<int>(alloc.watts.size()) != topo.n_links()) {
        throw std::invalid_argument("evaluate_throughput: allocation size mismatch");
    }
    const auto wifi_links = topo.links_of(Tech::wifi);
    const auto lte_links = topo.links_of(Tech::lte);
    if (wifi_links.size() == 1 && lte_links.size() == 1) {
        return evaluate_1x1(topo, alloc, wifi_links[0], lte_links[0]);
    }

    const auto sets = csma_sets(topo);
    const auto factors = access_factors(sets, topo.cca.zeta);
    const double lambda_w = to_watt(PowerDbm{topo.cca.lambda_c_dbm}).value;
    const double bw = topo.ch.bandwidth_hz;

    ThroughputReport rep;
    rep.links.reserve(topo.n_links());
    for (int i = 0; i < topo.n_links(); ++i) {
        LinkReport lr;
        lr.link_id = topo.aps[i].id;
        lr.tech = topo.aps[i].tech;
        if (alloc.watts[i] <= 0.0) {
            lr.sinr = 0.0;
            lr.rate_bps = 0.0;
            lr.region = RegionLabel::low_sinr;
            rep.links.push_back(lr);
            continue;
        }
        if (lr.tech == Tech::wifi) {
            lr.sinr = wifi_sinr_multi(i, alloc, topo);
            if (wifi_channel_energy_multi(i, alloc, topo, sets) > lambda_w) {
                lr.rate_bps = 0.0;
                lr.region = RegionLabel::cca_busy;
            } else if (lr.sinr < topo.smin_wifi) {
                lr.rate_bps = 0.0;
                lr.region = RegionLabel::low_sinr;
            } else {
                lr.rate_bps = factors.a[i] * factors.b[i] *
                              shannon_rate_bps(topo.eff_wifi, bw, lr.sinr);
                lr.region = RegionLabel::high_sinr;
            }
        } else {
            lr.sinr = lte_sinr_multi(i, alloc, topo, factors);
            if (lr.sinr < topo.smin_lte) {
                lr.rate_bps = 0.0;
                lr.region = RegionLabel::low_sinr;
            } else {
                lr.rate_bps = shannon_rate_bps(topo.eff_lte, bw, lr.sinr);
                lr.region = RegionLabel::high_sinr;
            }
        }
        rep.links.push_back(lr);
    }
    rep.wifi = tech_stats(rep.links, Tech::wifi);
    rep.lte = tech_stats(rep.links, Tech::lte);
    return rep;
}

double nearest_rank_p10(std::vector<double> values) {
    if (values.empty()) {
        return 0.0;
    }
    std::sort(values.begin(), values.end());
    const size_t rank = static_cast<size_t>(
        std::ceil(0.10 * static_cast<double>(values.size())));
    return values[std::max<size_t>(rank, 1) - 1];
}

}  // namespace coexsim
