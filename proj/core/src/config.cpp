#include "coexsim/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace coexsim {

namespace {

using nlohmann::json;

[[noreturn]] void unknown_key(const std::string& path, const std::string& key) {
    throw ConfigError("config: unknown key '" + (path.empty() ? key : path + "." + key) +
                      "'");
}

class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ConfigError("config: '" + path_ + "' must be an object");
        }
    }

    ~Section() = default;

    template <typename T>
    void get(const char* key, T& into) {
        seen_.push_back(key);
        if (auto it = j_.find(key); it != j_.end()) {
            try {
                into = it->get<T>();
            } catch (const json::exception&) {
                throw ConfigError("config: bad value type for '" + path_ + "." + key + "'");
            }
        }
    }

    bool has(const char* key) const { return j_.contains(key); }

    const json& raw(const char* key) {
        seen_.push_back(key);
        return j_.at(key);
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            bool known = false;
            for (const auto& k : seen_) {
                if (it.key() == k) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                unknown_key(path_, it.key());
            }
        }
    }

private:
    const json& j_;
    std::string path_;
    std::vector<std::string> seen_;
};

Tech parse_tech(const std::string& s, const std::string& where) {
    if (s == "wifi") return Tech::wifi;
    if (s == "lte") return Tech::lte;
    throw ConfigError("config: '" + where + "' must be \"wifi\" or \"lte\"");
}

Scheme parse_scheme(const std::string& s, const std::string& where) {
    if (s == "none") return Scheme::none;
    if (s == "power") return Scheme::power_control;
    if (s == "tdma") return Scheme::time_division;
    throw ConfigError("config: '" + where + "' must be \"none\", \"power\" or \"tdma\"");
}

}  // namespace

RunConfig RunConfig::defaults() {
    return RunConfig{};
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path.string() + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

RunConfig RunConfig::parse(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = text.empty() ? json::object() : json::parse(text);
    } catch (const json::parse_error& e) {
        // Byte offset -> line number for the diagnostic.
        size_t line = 1;
        for (size_t i = 0; i < std::min(e.byte, text.size()); ++i) {
            if (text[i] == '\n') {
                ++line;
            }
        }
        throw ConfigError(origin + ":" + std::to_string(line) + ": " + e.what());
    }

    RunConfig cfg;
    Section root(j, "");
    std::uint64_t seed = cfg.seed;
    root.get("seed", seed);
    cfg.seed = seed;
    cfg.montecarlo.rng_seed = seed;

    if (root.has("channel")) {
        Section s(root.raw("channel"), "channel");
        s.get("freq_ghz", cfg.channel.freq_ghz);
        s.get("pl_dist_coeff", cfg.channel.pl_dist_coeff);
        s.get("pl_const", cfg.channel.pl_const);
        s.get("pl_freq_coeff", cfg.channel.pl_freq_coeff);
        s.get("noise_floor_dbm", cfg.channel.noise_floor_dbm);
        s.get("bandwidth_hz", cfg.channel.bandwidth_hz);
        s.get("min_distance_m", cfg.channel.min_distance_m);
        s.get("extra_loss_db", cfg.channel.extra_loss_db);
        s.get("ap_antenna_height_m", cfg.channel.ap_antenna_height_m);
        s.get("ue_antenna_height_m", cfg.channel.ue_antenna_height_m);
        s.finish();
    }
    if (root.has("mac")) {
        Section s(root.raw("mac"), "mac");
        s.get("cw_min", cfg.mac.cw_min);
        s.get("max_backoff_stages", cfg.mac.max_backoff_stages);
        s.get("slot_us", cfg.mac.slot_us);
        s.get("sifs_us", cfg.mac.sifs_us);
        s.get("difs_us", cfg.mac.difs_us);
        s.get("header_us", cfg.mac.header_us);
        s.get("ack_us", cfg.mac.ack_us);
        s.get("payload_bits", cfg.mac.payload_bits);
        s.get("prop_delay_us", cfg.mac.prop_delay_us);
        s.get("data_rate_mbps", cfg.mac.data_rate_mbps);
        s.finish();
    }
    if (root.has("efficiency")) {
        Section s(root.raw("efficiency"), "efficiency");
        s.get("wifi_alpha", cfg.wifi_alpha);
        s.get("wifi_beta", cfg.wifi_beta);
        s.get("lte_alpha", cfg.lte_alpha);
        s.get("lte_beta", cfg.lte_beta);
        s.get("lte_bw_efficiency", cfg.lte_bw_efficiency);
        s.get("wifi_peak_mbps", cfg.wifi_peak_mbps);
        s.finish();
    }
    if (root.has("cca")) {
        Section s(root.raw("cca"), "cca");
        s.get("lambda_c_dbm", cfg.cca.lambda_c_dbm);
        s.get("cs_range_m", cfg.cca.cs_range_m);
        s.get("int_range_m", cfg.cca.int_range_m);
        s.get("zeta", cfg.cca.zeta);
        s.finish();
    }
    if (root.has("constraint")) {
        Section s(root.raw("constraint"), "constraint");
        s.get("p_max_dbm", cfg.p_max_dbm);
        s.get("p_min_dbm", cfg.p_min_dbm);
        s.get("tx_power_dbm", cfg.tx_power_dbm);
        s.get("min_sinr_wifi_db", cfg.min_sinr_wifi_db);
        s.get("min_sinr_lte_db", cfg.min_sinr_lte_db);
        s.get("strict_low_sinr", cfg.strict_low_sinr);
        s.finish();
    }
    if (root.has("sweep")) {
        Section s(root.raw("sweep"), "sweep");
        s.get("d_a_min", cfg.sweep.d_a_min);
        s.get("d_a_max", cfg.sweep.d_a_max);
        s.get("d_a_step", cfg.sweep.d_a_step);
        s.get("d_i_min", cfg.sweep.d_i_min);
        s.get("d_i_max", cfg.sweep.d_i_max);
        s.get("d_i_step", cfg.sweep.d_i_step);
        std::string persp;
        s.get("perspective", persp);
        if (!persp.empty()) {
            cfg.sweep.perspective = parse_tech(persp, "sweep.perspective");
        }
        s.finish();
    }
    if (root.has("montecarlo")) {
        Section s(root.raw("montecarlo"), "montecarlo");
        s.get("n_links_per_rat", cfg.montecarlo.n_links_per_rat);
        s.get("area_m", cfg.montecarlo.area_m);
        s.get("n_topologies", cfg.montecarlo.n_topologies);
        s.get("assoc_radius_m", cfg.montecarlo.assoc_radius_m);
        std::vector<std::string> schemes;
        s.get("schemes", schemes);
        if (!schemes.empty()) {
            cfg.schemes.clear();
            for (const auto& name : schemes) {
                cfg.schemes.push_back(parse_scheme(name, "montecarlo.schemes"));
            }
        }
        s.finish();
    }
    root.finish();

    cfg.channel.validate();
    cfg.mac.validate();
    return cfg;
}

SystemParams RunConfig::system_params() const {
    SystemParams p;
    p.ch = channel;
    p.mac = mac;
    p.cca = cca;
    p.smin_wifi_db = min_sinr_wifi_db;
    p.smin_lte_db = min_sinr_lte_db;
    p.strict_low_sinr = strict_low_sinr;
    p.tx_power = {tx_power_dbm};
    p.constraints.p_max_w = to_watt(PowerDbm{p_max_dbm}).value;
    p.constraints.p_min_w = to_watt(PowerDbm{p_min_dbm}).value;

    if (wifi_alpha > 0.0 && wifi_beta > 0.0) {
        p.eff_wifi = {wifi_alpha, wifi_beta};
    } else {
        const auto anchors = wifi_default_anchors(mac, wifi_peak_mbps * 1e6);
        p.eff_wifi =
            calibrate_efficiency(Tech::wifi, anchors, channel.bandwidth_hz).eff;
    }
    const auto lte_anchors = lte_default_anchors(lte_bw_efficiency, channel.bandwidth_hz);
    if (lte_alpha > 0.0 && lte_beta > 0.0) {
        p.eff_lte = {lte_alpha, lte_beta};
    } else {
        p.eff_lte =
            calibrate_efficiency(Tech::lte, lte_anchors, channel.bandwidth_hz).eff;
    }
    double floor = lte_anchors.front().rate_bps;
    for (const auto& a : lte_anchors) {
        floor = std::min(floor, a.rate_bps);
    }
    p.lte_rate_floor_bps = floor;
    return p;
}

}  // namespace coexsim
