#include "coexsim/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "coexsim/csv.hpp"

namespace coexsim {

namespace {

namespace fs = std::filesystem;

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + dir.string() +
                                 "': " + ec.message());
    }
}

double mbps(double bps) {
    return bps / 1e6;
}

void write_sweep_csv(const fs::path& path, const SweepGrid& grid,
                     const RunConfig& cfg, Tech perspective, Scheme scheme) {
    CsvFile csv(path);
    csv.comment("seed=" + std::to_string(cfg.seed));
    csv.comment(std::string("perspective=") + (perspective == Tech::wifi ? "wifi" : "lte") +
                " scheme=" + to_string(scheme));
    csv.header({"d_a_m", "d_i_m", "rate_mbps", "region"});
    for (const auto& c : grid.cells) {
        csv.row({csv_field(c.d_a), csv_field(c.d_i), csv_field(mbps(c.rate_bps)),
                 to_string(c.region)});
    }
    if (!csv.good()) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

}  // namespace

int cmd_sweep(const RunConfig& cfg, Scheme scheme, const fs::path& out_dir,
              std::ostream& log) {
    ensure_dir(out_dir);
    const SystemParams params = cfg.system_params();

    CsvFile summary(out_dir / "sweep_summary.csv");
    summary.comment("seed=" + std::to_string(cfg.seed));
    summary.header({"perspective", "scheme", "zero_rate_fraction", "mean_degradation",
                    "frac_cca_busy", "frac_low_sinr", "frac_high_sinr"});

    for (Tech perspective : {Tech::wifi, Tech::lte}) {
        SweepConfig sweep_cfg = cfg.sweep;
        sweep_cfg.perspective = perspective;
        const SweepGrid grid = single_link_sweep(sweep_cfg, params, scheme);
        const SweepSummary s = summarize_sweep(grid);
        const char* name = perspective == Tech::wifi ? "wifi" : "lte";
        write_sweep_csv(out_dir / (std::string(name) + "_sweep.csv"), grid, cfg,
                        perspective, scheme);
        summary.row({name, to_string(scheme), csv_field(s.zero_fraction),
                     csv_field(s.mean_degradation), csv_field(s.frac_cca),
                     csv_field(s.frac_low), csv_field(s.frac_high)});
        log << name << " sweep (" << to_string(scheme)
            << "): zero=" << format_number(s.zero_fraction)
            << " degradation=" << format_number(s.mean_degradation) << "\n";
    }
    if (!summary.good()) {
        throw std::runtime_error("failed writing sweep_summary.csv");
    }
    return 0;
}

int cmd_montecarlo(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
    ensure_dir(out_dir);
    const SystemParams params = cfg.system_params();
    MonteCarloConfig mc = cfg.montecarlo;
    mc.rng_seed = cfg.seed;

    CsvFile summary(out_dir / "mc_summary.csv");
    summary.comment("seed=" + std::to_string(cfg.seed));
    summary.comment("assoc_radius_m=" + format_number(mc.assoc_radius_m) +
                    " (UE placement assumption)");
    summary.header({"n_links", "tech", "scheme", "mean_mbps", "p10_mbps",
                    "dropped_lte_mean", "eta_mean"});

    for (Scheme scheme : cfg.schemes) {
        CsvFile detail(out_dir / ("mc_detail_" + std::string(to_string(scheme)) + ".csv"));
        detail.comment("seed=" + std::to_string(cfg.seed));
        detail.comment("assoc_radius_m=" + format_number(mc.assoc_radius_m) +
                       " (UE placement assumption)");
        detail.header({"topology", "link_id", "tech", "ap_x_m", "ap_y_m", "ue_x_m",
                       "ue_y_m", "sinr_db", "rate_mbps", "region", "eta"});

        std::vector<ThroughputReport> reports;
        double dropped_sum = 0.0;
        double eta_sum = 0.0;
        for (int t = 0; t < mc.n_topologies; ++t) {
            const Topology topo = random_topology(mc, t, params);
            const auto outcome = evaluate_coordination(topo, scheme, params);
            reports.push_back(outcome.report);
            dropped_sum += outcome.n_dropped_lte;
            eta_sum += outcome.eta;
            for (int i = 0; i < topo.n_links(); ++i) {
                const auto& l = outcome.report.links[i];
                const int ue = topo.ue_of(i);
                detail.row({csv_field(static_cast<double>(t)),
                            csv_field(static_cast<double>(l.link_id)),
                            l.tech == Tech::wifi ? "wifi" : "lte",
                            csv_field(topo.aps[i].pos.x), csv_field(topo.aps[i].pos.y),
                            csv_field(topo.ues[ue].pos.x), csv_field(topo.ues[ue].pos.y),
                            csv_field(l.sinr > 0 ? ratio_to_db(l.sinr) : -999.0),
                            csv_field(mbps(l.rate_bps)), to_string(l.region),
                            scheme == Scheme::time_division ? csv_field(outcome.eta)
                                                            : std::string()});
            }
        }
        const PooledStats stats = aggregate_stats(reports);
        const double n_topo = static_cast<double>(mc.n_topologies);
        const std::string eta_mean =
            scheme == Scheme::time_division ? csv_field(eta_sum / n_topo) : std::string();
        summary.row({csv_field(static_cast<double>(mc.n_links_per_rat)), "wifi",
                     to_string(scheme), csv_field(mbps(stats.wifi.mean_bps)),
                     csv_field(mbps(stats.wifi.p10_bps)),
                     csv_field(dropped_sum / n_topo), eta_mean});
        summary.row({csv_field(static_cast<double>(mc.n_links_per_rat)), "lte",
                     to_string(scheme), csv_field(mbps(stats.lte.mean_bps)),
                     csv_field(mbps(stats.lte.p10_bps)),
                     csv_field(dropped_sum / n_topo), eta_mean});
        if (!detail.good()) {
            throw std::runtime_error("failed writing montecarlo detail file");
        }
        log << "montecarlo N=" << mc.n_links_per_rat << " scheme=" << to_string(scheme)
            << ": wifi mean=" << format_number(mbps(stats.wifi.mean_bps))
            << " Mbps, lte mean=" << format_number(mbps(stats.lte.mean_bps))
            << " Mbps\n";
    }
    if (!summary.good()) {
        throw std::runtime_error("failed writing mc_summary.csv");
    }
    return 0;
}

int cmd_calibrate(const RunConfig& cfg, const std::optional<fs::path>& anchors,
                  const fs::path& out_dir, std::ostream& log) {
    ensure_dir(out_dir);
    CsvFile csv(out_dir / "efficiency.csv");
    csv.comment("seed=" + std::to_string(cfg.seed));
    csv.header({"tech", "alpha", "beta", "residual", "n_anchors"});

    auto emit = [&](const std::string& tech, std::span<const AnchorPoint> pts) {
        const auto result =
            calibrate_efficiency(tech == "lte" ? Tech::lte : Tech::wifi, pts,
                                 cfg.channel.bandwidth_hz);
        csv.row({tech, csv_field(result.eff.alpha), csv_field(result.eff.beta),
                 csv_field(result.residual), csv_field(static_cast<double>(pts.size()))});
        log << tech << ": alpha=" << format_number(result.eff.alpha)
            << " beta=" << format_number(result.eff.beta)
            << " residual=" << format_number(result.residual) << "\n";
    };

    if (anchors.has_value()) {
        std::ifstream in(*anchors);
        if (!in) {
            throw std::runtime_error("cannot open anchors file '" + anchors->string() +
                                     "'");
        }
        const auto pts = load_anchors(in);
        emit("custom", pts);
    } else {
        emit("wifi", wifi_default_anchors(cfg.mac, cfg.wifi_peak_mbps * 1e6));
        emit("lte", lte_default_anchors(cfg.lte_bw_efficiency, cfg.channel.bandwidth_hz));
    }
    if (!csv.good()) {
        throw std::runtime_error("failed writing efficiency.csv");
    }
    return 0;
}

}  // namespace coexsim
