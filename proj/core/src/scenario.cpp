#include "coexsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace coexsim {

const char* to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::none: return "none";
        case Scheme::power_control: return "power";
        case Scheme::time_division: return "tdma";
    }
    return "?";
}

SystemParams SystemParams::paper_defaults() {
    SystemParams p;
    const auto wifi_anchors = wifi_default_anchors(p.mac);
    const auto lte_anchors = lte_default_anchors(0.6, p.ch.bandwidth_hz);
    p.eff_wifi = calibrate_efficiency(Tech::wifi, wifi_anchors, p.ch.bandwidth_hz).eff;
    p.eff_lte = calibrate_efficiency(Tech::lte, lte_anchors, p.ch.bandwidth_hz).eff;
    double floor = lte_anchors.front().rate_bps;
    for (const auto& a : lte_anchors) {
        floor = std::min(floor, a.rate_bps);
    }
    p.lte_rate_floor_bps = floor;
    return p;
}

void SweepConfig::validate() const {
    if (d_a_step <= 0.0 || d_i_step <= 0.0) {
        throw std::invalid_argument("SweepConfig: steps must be > 0");
    }
    if (d_a_max < d_a_min || d_i_max < d_i_min) {
        throw std::invalid_argument("SweepConfig: empty range");
    }
}

void MonteCarloConfig::validate() const {
    if (n_links_per_rat < 1) {
        throw std::invalid_argument("MonteCarloConfig: n_links_per_rat must be >= 1");
    }
    if (n_topologies < 1) {
        throw std::invalid_argument("MonteCarloConfig: n_topologies must be >= 1");
    }
    if (area_m <= 0.0 || assoc_radius_m <= 0.0) {
        throw std::invalid_argument("MonteCarloConfig: area and radius must be > 0");
    }
}

namespace {

void apply_params(Topology& topo, const SystemParams& params) {
    topo.ch = params.ch;
    topo.eff_wifi = params.eff_wifi;
    topo.eff_lte = params.eff_lte;
    topo.cca = params.cca;
    topo.smin_wifi = params.smin_wifi();
    topo.smin_lte = params.smin_lte();
    topo.mac = params.mac;
    topo.strict_low_sinr = params.strict_low_sinr;
    topo.lte_rate_floor_bps = params.lte_rate_floor_bps;
}

std::vector<double> grid_values(double lo, double hi, double step) {
    std::vector<double> out;
    for (int k = 0;; ++k) {
        const double v = lo + step * k;
        if (v > hi + 1e-9) {
            break;
        }
        out.push_back(v);
    }
    return out;
}

// Uniform double in [0, 1) from the top 53 bits; pinned down so topologies
// do not depend on the standard library's distribution details.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Topology make_1x1_topology(Position wifi_ap, Position wifi_ue, Position lte_ap,
                           Position lte_ue, const SystemParams& params) {
    Topology topo;
    topo.aps = {{0, Tech::wifi, wifi_ap}, {1, Tech::lte, lte_ap}};
    topo.ues = {{0, wifi_ue, 0}, {1, lte_ue, 1}};
    apply_params(topo, params);
    return topo;
}

namespace {

Topology sweep_cell_topology(double d_a, double d_i, Tech perspective,
                             const SystemParams& params) {
    const double side = d_i >= 0.0 ? 1.0 : -1.0;
    const Position victim_ue{0.0, 0.0};
    const Position victim_ap{d_a, 0.0};
    const Position interferer_ap{d_i, 0.0};
    const Position interferer_ue{d_i + side * d_a, 0.0};
    if (perspective == Tech::wifi) {
        return make_1x1_topology(victim_ap, victim_ue, interferer_ap, interferer_ue,
                                 params);
    }
    return make_1x1_topology(interferer_ap, interferer_ue, victim_ap, victim_ue,
                             params);
}

}  // namespace

CoordinationOutcome evaluate_coordination(const Topology& topo, Scheme scheme,
                                          const SystemParams& params) {
    CoordinationOutcome out;
    const double tx_w = to_watt(params.tx_power).value;
    switch (scheme) {
        case Scheme::none: {
            out.report = evaluate_throughput(
                topo, PowerAllocation::uniform(topo.n_links(), tx_w));
            return out;
        }
        case Scheme::power_control: {
            const OptResult res = relax_and_solve(topo, params.constraints);
            out.status = res.status;
            out.n_dropped_lte = static_cast<int>(res.dropped_lte.size());
            out.report = evaluate_throughput(topo, res.alloc);
            return out;
        }
        case Scheme::time_division: {
            const auto wifi_alloc =
                per_rat_power_control(topo, Tech::wifi, params.constraints);
            const auto lte_alloc =
                per_rat_power_control(topo, Tech::lte, params.constraints);
            const auto wifi_step = evaluate_throughput(topo, wifi_alloc);
            const auto lte_step = evaluate_throughput(topo, lte_alloc);
            // Links the step-1 relaxation sacrificed (zero rate) do not cap
            // the max-min split; their report rate stays zero either way.
            std::vector<double> wifi_rates, lte_rates;
            for (int i = 0; i < topo.n_links(); ++i) {
                const bool wifi = topo.aps[i].tech == Tech::wifi;
                const double r = (wifi ? wifi_step : lte_step).links[i].rate_bps;
                if (r > 0.0) {
                    (wifi ? wifi_rates : lte_rates).push_back(r);
                }
            }
            const auto share = optimize_time_share(wifi_rates, lte_rates);
            out.eta = share.share.eta;
            out.report.links.resize(topo.n_links());
            for (int i = 0; i < topo.n_links(); ++i) {
                const bool wifi = topo.aps[i].tech == Tech::wifi;
                LinkReport lr = wifi ? wifi_step.links[i] : lte_step.links[i];
                lr.rate_bps *= wifi ? out.eta : (1.0 - out.eta);
                out.report.links[i] = lr;
            }
            std::vector<double> w_scaled, l_scaled;
            for (const auto& l : out.report.links) {
                (l.tech == Tech::wifi ? w_scaled : l_scaled).push_back(l.rate_bps);
            }
            out.report.wifi = {0.0, 0.0};
            out.report.lte = {0.0, 0.0};
            if (!w_scaled.empty()) {
                double s = 0.0;
                for (double r : w_scaled) s += r;
                out.report.wifi = {s / w_scaled.size(), nearest_rank_p10(w_scaled)};
            }
            if (!l_scaled.empty()) {
                double s = 0.0;
                for (double r : l_scaled) s += r;
                out.report.lte = {s / l_scaled.size(), nearest_rank_p10(l_scaled)};
            }
            return out;
        }
    }
    throw std::logic_error("evaluate_coordination: unknown scheme");
}

SweepGrid single_link_sweep(const SweepConfig& cfg, const SystemParams& params,
                            Scheme scheme) {
    cfg.validate();
    SweepGrid grid;
    grid.d_a_values = grid_values(cfg.d_a_min, cfg.d_a_max, cfg.d_a_step);
    grid.d_i_values = grid_values(cfg.d_i_min, cfg.d_i_max, cfg.d_i_step);
    grid.cells.reserve(grid.d_a_values.size() * grid.d_i_values.size());
    const double tx_w = to_watt(params.tx_power).value;

    for (double d_a : grid.d_a_values) {
        for (double d_i : grid.d_i_values) {
            Topology topo = sweep_cell_topology(d_a, d_i, cfg.perspective, params);
            const int victim = cfg.perspective == Tech::wifi ? 0 : 1;

            SweepCell cell;
            cell.d_a = d_a;
            cell.d_i = d_i;

            // Standalone reference: interferer silent, victim at tx power.
            PowerAllocation solo = PowerAllocation::uniform(2, 0.0);
            solo.watts[victim] = tx_w;
            cell.standalone_bps =
                evaluate_throughput(topo, solo).links[victim].rate_bps;

            const auto outcome = evaluate_coordination(topo, scheme, params);
            cell.rate_bps = outcome.report.links[victim].rate_bps;
            cell.region = outcome.report.links[victim].region;
            grid.cells.push_back(cell);
        }
    }
    return grid;
}

SweepSummary summarize_sweep(const SweepGrid& grid) {
    SweepSummary s;
    if (grid.cells.empty()) {
        return s;
    }
    size_t zero = 0, cca = 0, low = 0, high = 0;
    double deg_sum = 0.0;
    size_t deg_n = 0;
    for (const auto& c : grid.cells) {
        if (c.rate_bps <= 0.0) {
            ++zero;
        }
        switch (c.region) {
            case RegionLabel::cca_busy: ++cca; break;
            case RegionLabel::low_sinr: ++low; break;
            case RegionLabel::high_sinr: ++high; break;
        }
        if (c.standalone_bps > 0.0) {
            deg_sum += 1.0 - c.rate_bps / c.standalone_bps;
            ++deg_n;
        }
    }
    const double n = static_cast<double>(grid.cells.size());
    s.zero_fraction = zero / n;
    s.frac_cca = cca / n;
    s.frac_low = low / n;
    s.frac_high = high / n;
    s.mean_degradation = deg_n > 0 ? deg_sum / static_cast<double>(deg_n) : 0.0;
    return s;
}

Topology random_topology(const MonteCarloConfig& cfg, int topology_index,
                         const SystemParams& params) {
    cfg.validate();
    std::seed_seq seq{static_cast<std::uint64_t>(cfg.rng_seed),
                      static_cast<std::uint64_t>(topology_index)};
    std::mt19937_64 rng(seq);

    Topology topo;
    const int n = cfg.n_links_per_rat;
    // Draw order: Wi-Fi AP xy pairs, LTE AP xy pairs, then one (angle,
    // radius) pair per UE in AP order. Changing this breaks seed stability.
    for (int i = 0; i < 2 * n; ++i) {
        const Tech tech = i < n ? Tech::wifi : Tech::lte;
        const double x = next_unit(rng) * cfg.area_m;
        const double y = next_unit(rng) * cfg.area_m;
        topo.aps.push_back({i, tech, {x, y}});
    }
    for (int i = 0; i < 2 * n; ++i) {
        const double angle = next_unit(rng) * 2.0 * 3.14159265358979323846;
        const double radius = cfg.assoc_radius_m * std::sqrt(next_unit(rng));
        const Position p{topo.aps[i].pos.x + radius * std::cos(angle),
                         topo.aps[i].pos.y + radius * std::sin(angle)};
        topo.ues.push_back({i, p, i});
    }
    apply_params(topo, params);
    return topo;
}

PooledStats aggregate_stats(std::span<const ThroughputReport> reports) {
    std::vector<double> wifi_rates, lte_rates;
    for (const auto& rep : reports) {
        for (const auto& l : rep.links) {
            (l.tech == Tech::wifi ? wifi_rates : lte_rates).push_back(l.rate_bps);
        }
    }
    PooledStats out;
    auto fill = [](std::vector<double>& rates, TechStats& stats) {
        if (rates.empty()) {
            return;
        }
        double sum = 0.0;
        for (double r : rates) {
            sum += r;
        }
        stats.mean_bps = sum / static_cast<double>(rates.size());
        stats.p10_bps = nearest_rank_p10(rates);
    };
    fill(wifi_rates, out.wifi);
    fill(lte_rates, out.lte);
    return out;
}

}  // namespace coexsim
