#pragma once

#include <span>
#include <vector>

#include "coexsim/netmodel.hpp"

namespace coexsim {

// Per-link minimum-rate requirements plus the power box.
// Semantics of r_min_bps (when non-empty, one entry per link):
//   r > 0  -> S_min = 2^(r / (prefactor * B)) / beta  (inverse of the
//             high-SINR rate approximation; prefactor = a_i*b_i*alpha_w for
//             Wi-Fi, alpha_l for LTE)
//   r == 0 -> constraint disabled
//   r < 0  -> use the topology's default minimum SINR for that tech
// An empty vector applies the topology defaults to every link.
struct RateConstraints {
    double p_max_w = 0.1;   // 20 dBm
    double p_min_w = 1e-6;  // lower bound for powered links
    std::vector<double> r_min_bps;
};

enum class OptStatus { optimal, relaxed_optimal, infeasible };

const char* to_string(OptStatus status);

struct OptResult {
    OptStatus status = OptStatus::infeasible;
    PowerAllocation alloc;
    std::vector<int> dropped_lte;   // silenced link ids (zero power)
    std::vector<int> relaxed_lte;   // link ids whose r_min was zeroed
    double objective = 0.0;         // sum_i w_i ln(beta_i S_i), nats
    double kkt_residual = 0.0;
};

// Weighted log-SINR objective of an allocation (silenced links excluded).
double gp_objective(const Topology& topo, const PowerAllocation& alloc);

// Whether an allocation satisfies every joint-GP constraint within rel_tol.
bool allocation_feasible(const Topology& topo, const RateConstraints& constraints,
                         const PowerAllocation& alloc, double rel_tol = 1e-6);

// One-shot joint power control; Infeasible when phase-1 fails.
OptResult joint_power_control(const Topology& topo, const RateConstraints& constraints);

// Joint power control with the LTE minimum-rate relaxation loop: on
// infeasibility, zero the r_min of the LTE link with the largest aggregate
// P_max*G toward the violated Wi-Fi constraints (ties: lowest id); a
// zero-r_min link that still blocks feasibility is silenced outright.
OptResult relax_and_solve(const Topology& topo, const RateConstraints& constraints);

// Step 1 of time-division coordination: optimize one RAT with the other
// silent. Same machinery, same-RAT relaxation on infeasibility.
PowerAllocation per_rat_power_control(const Topology& topo, Tech rat,
                                      const RateConstraints& constraints);

struct TimeShare {
    double eta = 0.5;  // fraction of time granted to Wi-Fi
};

struct TimeShareResult {
    TimeShare share;
    double min_throughput_bps = 0.0;
};

// Closed-form max-min split: eta* = B/(A+B) with A = min Wi-Fi rate,
// B = min LTE rate; 0.5 when A + B == 0.
TimeShareResult optimize_time_share(std::span<const double> wifi_rates,
                                    std::span<const double> lte_rates);

}  // namespace coexsim
