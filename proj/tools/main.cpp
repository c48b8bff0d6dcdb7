#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "coexsim/commands.hpp"

namespace {

coexsim::RunConfig load_config(const std::string& config_path,
                               std::optional<std::uint64_t> seed_flag) {
    coexsim::RunConfig cfg = config_path.empty()
                                 ? coexsim::RunConfig::defaults()
                                 : coexsim::RunConfig::load(config_path);
    if (seed_flag.has_value()) {
        cfg.seed = *seed_flag;
        cfg.montecarlo.rng_seed = *seed_flag;
    }
    return cfg;
}

coexsim::Scheme parse_scheme_flag(const std::string& s) {
    if (s == "none") return coexsim::Scheme::none;
    if (s == "power") return coexsim::Scheme::power_control;
    if (s == "tdma") return coexsim::Scheme::time_division;
    throw CLI::ValidationError("--scheme", "must be none|power|tdma");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wi-Fi/LTE unlicensed-band coexistence simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir = ".";
    std::string scheme_name = "none";
    std::string anchors_path;
    std::optional<std::uint64_t> seed_flag;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed_flag, "override the RNG seed");

    auto* sweep = app.add_subcommand("sweep", "single-link (d_A, d_I) sweep");
    sweep->add_option("--scheme", scheme_name, "none|power|tdma");

    auto* mc = app.add_subcommand("montecarlo", "random multi-link evaluation");

    auto* cal = app.add_subcommand("calibrate", "fit the (alpha, beta) efficiency pairs");
    cal->add_option("--anchors", anchors_path,
                    "two-column anchors file (sinr_db, mbps); default: built-in tables");

    CLI11_PARSE(app, argc, argv);

    try {
        const coexsim::RunConfig cfg = load_config(config_path, seed_flag);
        if (sweep->parsed()) {
            return coexsim::cmd_sweep(cfg, parse_scheme_flag(scheme_name), out_dir,
                                      std::cout);
        }
        if (mc->parsed()) {
            return coexsim::cmd_montecarlo(cfg, out_dir, std::cout);
        }
        if (cal->parsed()) {
            std::optional<std::filesystem::path> anchors;
            if (!anchors_path.empty()) {
                anchors = anchors_path;
            }
            return coexsim::cmd_calibrate(cfg, anchors, out_dir, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
