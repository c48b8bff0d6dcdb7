#include "coexsim/mac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace coexsim {

void MacParams::validate() const {
    if (cw_min < 1.0) {
        throw std::invalid_argument("MacParams: cw_min must be >= 1");
    }
    if (max_backoff_stages < 0) {
        throw std::invalid_argument("MacParams: max_backoff_stages must be >= 0");
    }
    for (double t : {slot_us, sifs_us, difs_us, header_us, ack_us, payload_bits,
                     data_rate_mbps}) {
        if (t <= 0.0) {
            throw std::invalid_argument("MacParams: times, payload and rate must be > 0");
        }
    }
}

namespace {

// tau(p) in the singularity-free form 2 / ((W+1) + p W sum_{i<m} (2p)^i).
double tau_of_p(double p, const MacParams& mac) {
    double geom = 0.0;
    double term = 1.0;
    for (int i = 0; i < mac.max_backoff_stages; ++i) {
        geom += term;
        term *= 2.0 * p;
    }
    return 2.0 / ((mac.cw_min + 1.0) + p * mac.cw_min * geom);
}

}  // namespace

BianchiResult bianchi_solve(int n_stations, const MacParams& mac) {
    mac.validate();
    if (n_stations < 1) {
        throw std::invalid_argument("bianchi_solve: n_stations must be >= 1");
    }
    if (n_stations == 1) {
        return {tau_of_p(0.0, mac), 0.0};
    }
    // g(p) = p - (1 - (1-tau(p))^(n-1)) is increasing; bisect its root.
    auto g = [&](double p) {
        const double tau = tau_of_p(p, mac);
        return p - (1.0 - std::pow(1.0 - tau, n_stations - 1));
    };
    double lo = 0.0, hi = 1.0;
    double p = 0.5;
    for (int it = 0; it < 200; ++it) {
        p = 0.5 * (lo + hi);
        if (g(p) < 0.0) {
            lo = p;
        } else {
            hi = p;
        }
        if (hi - lo < 1e-14) {
            break;
        }
    }
    p = 0.5 * (lo + hi);
    if (std::abs(g(p)) > 1e-10) {
        throw std::runtime_error("bianchi_solve: fixed point did not converge");
    }
    return {tau_of_p(p, mac), p};
}

double success_airtime_us(const MacParams& mac) {
    const double payload_us = mac.payload_bits / mac.data_rate_mbps;
    return mac.header_us + payload_us + mac.sifs_us + mac.ack_us + mac.difs_us +
           2.0 * mac.prop_delay_us;
}

double collision_airtime_us(const MacParams& mac) {
    const double payload_us = mac.payload_bits / mac.data_rate_mbps;
    return mac.header_us + payload_us + mac.difs_us + mac.prop_delay_us;
}

ChannelTimeFractions channel_time_fractions(int n_stations, const MacParams& mac) {
    const auto [tau, p] = bianchi_solve(n_stations, mac);
    const double p_tr = 1.0 - std::pow(1.0 - tau, n_stations);
    const double p_s =
        n_stations * tau * std::pow(1.0 - tau, n_stations - 1) / p_tr;
    const double t_empty = (1.0 - p_tr) * mac.slot_us;
    const double t_succ = p_tr * p_s * success_airtime_us(mac);
    const double t_coll = p_tr * (1.0 - p_s) * collision_airtime_us(mac);
    const double total = t_empty + t_succ + t_coll;
    return {t_empty / total, t_succ / total, t_coll / total};
}

double bianchi_saturation_throughput_bps(int n_stations, const MacParams& mac) {
    const auto fr = channel_time_fractions(n_stations, mac);
    // eta_s * payload / T_s, converted from bits/us to bits/s.
    return fr.eta_s * mac.payload_bits / success_airtime_us(mac) * 1e6;
}

namespace {

struct FitEval {
    double sse;
    double alpha;
};

FitEval alpha_for_beta(double beta, std::span<const AnchorPoint> anchors,
                       double bandwidth_hz) {
    double num = 0.0, den = 0.0;
    for (const auto& a : anchors) {
        const double s = std::pow(10.0, a.sinr_db / 10.0);
        const double x = bandwidth_hz * std::log2(1.0 + beta * s);
        num += a.rate_bps * x;
        den += x * x;
    }
    double alpha = den > 0.0 ? num / den : 1.0;
    alpha = std::clamp(alpha, 1e-12, 1.0);
    double sse = 0.0;
    for (const auto& a : anchors) {
        const double s = std::pow(10.0, a.sinr_db / 10.0);
        const double r = alpha * bandwidth_hz * std::log2(1.0 + beta * s);
        sse += (r - a.rate_bps) * (r - a.rate_bps);
    }
    return {sse, alpha};
}

}  // namespace

CalibrationResult calibrate_efficiency(Tech, std::span<const AnchorPoint> anchors,
                                       double bandwidth_hz) {
    if (anchors.size() < 2) {
        throw std::invalid_argument("calibrate_efficiency: need >= 2 anchor points");
    }
    std::vector<AnchorPoint> sorted(anchors.begin(), anchors.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const AnchorPoint& a, const AnchorPoint& b) { return a.sinr_db < b.sinr_db; });
    for (size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].sinr_db <= sorted[i - 1].sinr_db) {
            throw std::invalid_argument(
                "calibrate_efficiency: anchor SINRs must be strictly increasing");
        }
    }
    // Coarse log-grid over beta, then golden-section refinement around the
    // best cell. Deterministic and seed-free.
    constexpr int kGrid = 200;
    const double lb = std::log(1e-3), ub = std::log(1.0);
    int best = 0;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kGrid; ++k) {
        const double beta = std::exp(lb + (ub - lb) * k / (kGrid - 1));
        const double sse = alpha_for_beta(beta, sorted, bandwidth_hz).sse;
        if (sse < best_sse) {
            best_sse = sse;
            best = k;
        }
    }
    double a = lb + (ub - lb) * std::max(0, best - 2) / (kGrid - 1);
    double b = lb + (ub - lb) * std::min(kGrid - 1, best + 2) / (kGrid - 1);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = alpha_for_beta(std::exp(c), sorted, bandwidth_hz).sse;
    double fd = alpha_for_beta(std::exp(d), sorted, bandwidth_hz).sse;
    for (int it = 0; it < 200 && (b - a) > 1e-15; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = alpha_for_beta(std::exp(c), sorted, bandwidth_hz).sse;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = alpha_for_beta(std::exp(d), sorted, bandwidth_hz).sse;
        }
    }
    const double beta = std::exp(0.5 * (a + b));
    const auto fit = alpha_for_beta(beta, sorted, bandwidth_hz);
    return {{fit.alpha, beta}, fit.sse};
}

std::vector<AnchorPoint> wifi_default_anchors(const MacParams& mac, double peak_bps) {
    static constexpr double kRatesMbps[] = {6, 9, 12, 18, 24, 36, 48, 54};
    static constexpr double kSinrDb[] = {4.5, 7.0, 8.5, 11.5, 14.0, 18.0, 21.0, 22.0};
    std::vector<AnchorPoint> out;
    double peak = 0.0;
    for (double r : kRatesMbps) {
        MacParams step = mac;
        step.data_rate_mbps = r;
        peak = std::max(peak, bianchi_saturation_throughput_bps(1, step));
    }
    const double scale = peak_bps / peak;
    for (size_t i = 0; i < std::size(kRatesMbps); ++i) {
        MacParams step = mac;
        step.data_rate_mbps = kRatesMbps[i];
        out.push_back({kSinrDb[i],
                       scale * bianchi_saturation_throughput_bps(1, step)});
    }
    return out;
}

std::vector<AnchorPoint> lte_default_anchors(double bw_efficiency, double bandwidth_hz) {
    static constexpr double kCqiEff[] = {0.1523, 0.2344, 0.3770, 0.6016, 0.8770,
                                         1.1758, 1.4766, 1.9141, 2.4063, 2.7305,
                                         3.3223, 3.9023, 4.5234, 5.1152, 5.5547};
    std::vector<AnchorPoint> out;
    for (size_t i = 0; i < std::size(kCqiEff); ++i) {
        const double cqi = static_cast<double>(i + 1);
        out.push_back({2.1 * cqi - 8.1, bw_efficiency * kCqiEff[i] * bandwidth_hz});
    }
    return out;
}

std::vector<AnchorPoint> load_anchors(std::istream& in) {
    std::vector<AnchorPoint> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ss(line);
        double sinr_db, mbps;
        if (!(ss >> sinr_db)) {
            continue;  // blank or comment-only line
        }
        if (!(ss >> mbps)) {
            throw std::invalid_argument("anchor file line " + std::to_string(lineno) +
                                        ": expected two numeric columns");
        }
        out.push_back({sinr_db, mbps * 1e6});
    }
    return out;
}

}  // namespace coexsim
