#include "coexsim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gp_solver.hpp"

namespace coexsim {

namespace {

using detail::GpConstraint;
using detail::GpObjective;
using detail::GpSolveOutcome;
using detail::GpSolverOptions;
using detail::LogSum;

constexpr int kKindRate = 0;
constexpr int kKindCca = 1;
constexpr int kKindBox = 2;

struct LinkData {
    std::vector<double> weight;       // a_i b_i alpha_w | alpha_l, per link
    std::vector<double> s_min;        // linear; <= 0 disables
    AccessFactors factors;
    CsmaSets sets;
};

LinkData link_data(const Topology& topo, const RateConstraints& constraints) {
    topo.validate();
    LinkData data;
    data.sets = csma_sets(topo);
    data.factors = access_factors(data.sets, topo.cca.zeta);
    const int n = topo.n_links();
    data.weight.resize(n);
    data.s_min.resize(n);
    if (!constraints.r_min_bps.empty() &&
        static_cast<int>(constraints.r_min_bps.size()) != n) {
        throw std::invalid_argument("RateConstraints: r_min_bps size mismatch");
    }
    for (int i = 0; i < n; ++i) {
        const bool wifi = topo.aps[i].tech == Tech::wifi;
        const double alpha = wifi ? topo.eff_wifi.alpha : topo.eff_lte.alpha;
        const double beta = wifi ? topo.eff_wifi.beta : topo.eff_lte.beta;
        const double prefactor =
            wifi ? data.factors.a[i] * data.factors.b[i] * alpha : alpha;
        data.weight[i] = prefactor;
        if (constraints.r_min_bps.empty() || constraints.r_min_bps[i] < 0.0) {
            data.s_min[i] = wifi ? topo.smin_wifi : topo.smin_lte;
        } else if (constraints.r_min_bps[i] == 0.0) {
            data.s_min[i] = 0.0;
        } else {
            // Inverse of r = prefactor * B * log2(beta * S).
            data.s_min[i] = std::exp2(constraints.r_min_bps[i] /
                                      (prefactor * topo.ch.bandwidth_hz)) /
                            beta;
        }
    }
    return data;
}

struct BuiltProblem {
    GpObjective objective;
    std::vector<GpConstraint> constraints;
    std::vector<int> active;          // topology link index per variable
    std::vector<int> var_of_link;     // -1 when inactive
};

// Active-set GP builder. Per-RAT programs are the same program with the
// other RAT's links left out of the active set.
BuiltProblem build_problem(const Topology& topo, const LinkData& data,
                           const std::vector<int>& active,
                           const std::vector<double>& s_min,
                           const RateConstraints& constraints) {
    BuiltProblem built;
    built.active = active;
    built.var_of_link.assign(topo.n_links(), -1);
    for (size_t v = 0; v < active.size(); ++v) {
        built.var_of_link[active[v]] = static_cast<int>(v);
    }
    const double noise = topo.ch.noise_watt().value;
    const double y_lo = std::log(constraints.p_min_w);
    const double y_hi = std::log(constraints.p_max_w);

    for (int link : active) {
        const bool wifi = topo.aps[link].tech == Tech::wifi;
        const double beta = wifi ? topo.eff_wifi.beta : topo.eff_lte.beta;
        const int ue = topo.ue_of(link);
        const double g_own =
            channel_gain(topo.aps[link].pos, topo.ues[ue].pos, topo.ch).value;

        LogSum denom;
        denom.constant = noise;
        for (int j : active) {
            if (j == link) {
                continue;
            }
            const bool j_wifi = topo.aps[j].tech == Tech::wifi;
            if (wifi && j_wifi) {
                continue;  // CSMA peers are not interference (Eq. 5)
            }
            double g =
                channel_gain(topo.aps[j].pos, topo.ues[ue].pos, topo.ch).value;
            if (!wifi && j_wifi) {
                g *= data.factors.a[j];  // Wi-Fi active a_k of the time
            }
            denom.terms.push_back({built.var_of_link[j], g});
        }

        const int v = built.var_of_link[link];
        built.objective.weight.push_back(data.weight[link]);
        built.objective.offset.push_back(std::log(g_own) + std::log(beta));
        built.objective.denom.push_back(denom);

        if (s_min[link] > 0.0) {
            GpConstraint c;
            c.use_lse = true;
            c.lse = built.objective.denom.back();
            c.linear.push_back({v, -1.0});
            c.constant = std::log(s_min[link]) - std::log(g_own);
            c.owner_link = link;
            c.kind = kKindRate;
            built.constraints.push_back(std::move(c));
        }

        GpConstraint hi;
        hi.linear.push_back({v, 1.0});
        hi.constant = -y_hi;
        hi.owner_link = link;
        hi.kind = kKindBox;
        built.constraints.push_back(std::move(hi));
        GpConstraint lo;
        lo.linear.push_back({v, -1.0});
        lo.constant = y_lo;
        lo.owner_link = link;
        lo.kind = kKindBox;
        built.constraints.push_back(std::move(lo));
    }

    // CCA energy bound at every active Wi-Fi AP: LTE + hidden-zone Wi-Fi.
    const double lambda_eff =
        to_watt(PowerDbm{topo.cca.lambda_c_dbm}).value * (1.0 - 1e-6);
    for (int link : active) {
        if (topo.aps[link].tech != Tech::wifi) {
            continue;
        }
        GpConstraint c;
        c.use_lse = true;
        c.lse.constant = noise;
        for (int j : active) {
            if (j == link) {
                continue;
            }
            const bool j_lte = topo.aps[j].tech == Tech::lte;
            const bool j_hidden =
                std::find(data.sets.hidden[link].begin(), data.sets.hidden[link].end(),
                          j) != data.sets.hidden[link].end();
            if (j_lte || j_hidden) {
                const double g =
                    channel_gain(topo.aps[link].pos, topo.aps[j].pos, topo.ch).value;
                c.lse.terms.push_back({built.var_of_link[j], g});
            }
        }
        c.constant = -std::log(lambda_eff);
        c.owner_link = link;
        c.kind = kKindCca;
        built.constraints.push_back(std::move(c));
    }
    return built;
}

PowerAllocation allocation_from(const Topology& topo, const BuiltProblem& built,
                                const std::vector<double>& y) {
    PowerAllocation alloc = PowerAllocation::uniform(topo.n_links(), 0.0);
    for (size_t v = 0; v < built.active.size(); ++v) {
        alloc.watts[built.active[v]] = std::exp(y[v]);
    }
    return alloc;
}

// Aggregate P_max * G toward violated Wi-Fi constraints (falling back to all
// violated constraints), evaluated at the phase-1 point.
int pick_victim(const Topology& topo, const BuiltProblem& built,
                const GpSolveOutcome& outcome, const std::vector<int>& candidates,
                double p_max) {
    std::vector<const GpConstraint*> violated_wifi, violated_all;
    for (size_t c = 0; c < built.constraints.size(); ++c) {
        if (outcome.constraint_values[c] <= 1e-12 ||
            built.constraints[c].kind == kKindBox) {
            continue;
        }
        const GpConstraint* gc = &built.constraints[c];
        violated_all.push_back(gc);
        if (topo.aps[gc->owner_link].tech == Tech::wifi) {
            violated_wifi.push_back(gc);
        }
    }
    const auto& pool = violated_wifi.empty() ? violated_all : violated_wifi;
    int best = -1;
    double best_score = -1.0;
    for (int cand : candidates) {
        const int v = built.var_of_link[cand];
        double score = 0.0;
        for (const GpConstraint* gc : pool) {
            for (const auto& [var, coeff] : gc->lse.terms) {
                if (var == v) {
                    score += p_max * coeff;
                }
            }
        }
        if (score > best_score ||
            (score == best_score && best >= 0 &&
             topo.aps[cand].id < topo.aps[best].id)) {
            best_score = score;
            best = cand;
        }
    }
    if (best < 0 && !candidates.empty()) {
        best = *std::min_element(candidates.begin(), candidates.end(),
                                 [&](int a, int b) {
                                     return topo.aps[a].id < topo.aps[b].id;
                                 });
    }
    return best;
}

GpSolverOptions solver_options(const RateConstraints& constraints) {
    GpSolverOptions opt;
    opt.y_lo = std::log(constraints.p_min_w);
    opt.y_hi = std::log(constraints.p_max_w);
    return opt;
}

struct RelaxState {
    std::vector<int> active;
    std::vector<double> s_min;
    std::vector<int> relaxed;   // link indices
    std::vector<int> silenced;  // link indices
};

OptResult solve_with_relaxation(const Topology& topo, const RateConstraints& constraints,
                                const LinkData& data, std::vector<int> active,
                                const std::vector<int>& relax_pool) {
    RelaxState st;
    st.active = std::move(active);
    st.s_min = data.s_min;
    const auto opts = solver_options(constraints);

    OptResult result;
    while (true) {
        BuiltProblem built = build_problem(topo, data, st.active, st.s_min, constraints);
        GpSolveOutcome outcome = solve_gp(built.objective, built.constraints, opts);
        if (outcome.feasible) {
            result.status = (st.relaxed.empty() && st.silenced.empty())
                                ? OptStatus::optimal
                                : OptStatus::relaxed_optimal;
            result.alloc = allocation_from(topo, built, outcome.y);
            result.objective = outcome.objective;
            result.kkt_residual = outcome.kkt_residual;
            for (int link : st.silenced) {
                result.dropped_lte.push_back(topo.aps[link].id);
            }
            for (int link : st.relaxed) {
                result.relaxed_lte.push_back(topo.aps[link].id);
            }
            std::sort(result.dropped_lte.begin(), result.dropped_lte.end());
            std::sort(result.relaxed_lte.begin(), result.relaxed_lte.end());
            return result;
        }
        // Candidates still relaxable: pool members active with s_min > 0;
        // already-relaxed members may be silenced instead.
        std::vector<int> relaxable, silenceable;
        for (int link : relax_pool) {
            if (std::find(st.active.begin(), st.active.end(), link) == st.active.end()) {
                continue;
            }
            if (st.s_min[link] > 0.0) {
                relaxable.push_back(link);
            } else {
                silenceable.push_back(link);
            }
        }
        if (!relaxable.empty()) {
            const int victim =
                pick_victim(topo, built, outcome, relaxable, constraints.p_max_w);
            st.s_min[victim] = 0.0;
            st.relaxed.push_back(victim);
        } else if (!silenceable.empty()) {
            const int victim =
                pick_victim(topo, built, outcome, silenceable, constraints.p_max_w);
            st.active.erase(std::find(st.active.begin(), st.active.end(), victim));
            st.silenced.push_back(victim);
        } else {
            result.status = OptStatus::infeasible;
            result.alloc = PowerAllocation::uniform(topo.n_links(), 0.0);
            for (int link : st.silenced) {
                result.dropped_lte.push_back(topo.aps[link].id);
            }
            for (int link : st.relaxed) {
                result.relaxed_lte.push_back(topo.aps[link].id);
            }
            return result;
        }
    }
}

}  // namespace

const char* to_string(OptStatus status) {
    switch (status) {
        case OptStatus::optimal: return "Optimal";
        case OptStatus::relaxed_optimal: return "RelaxedOptimal";
        case OptStatus::infeasible: return "Infeasible";
    }
    return "?";
}

double gp_objective(const Topology& topo, const PowerAllocation& alloc) {
    const auto sets = csma_sets(topo);
    const auto factors = access_factors(sets, topo.cca.zeta);
    double obj = 0.0;
    for (int i = 0; i < topo.n_links(); ++i) {
        if (alloc.watts[i] <= 0.0) {
            continue;
        }
        const bool wifi = topo.aps[i].tech == Tech::wifi;
        const double s = wifi ? wifi_sinr_multi(i, alloc, topo)
                              : lte_sinr_multi(i, alloc, topo, factors);
        const double w = wifi ? factors.a[i] * factors.b[i] * topo.eff_wifi.alpha
                              : topo.eff_lte.alpha;
        const double beta = wifi ? topo.eff_wifi.beta : topo.eff_lte.beta;
        obj += w * std::log(beta * s);
    }
    return obj;
}

bool allocation_feasible(const Topology& topo, const RateConstraints& constraints,
                         const PowerAllocation& alloc, double rel_tol) {
    const auto data = link_data(topo, constraints);
    const double lambda = to_watt(PowerDbm{topo.cca.lambda_c_dbm}).value;
    for (int i = 0; i < topo.n_links(); ++i) {
        const double p = alloc.watts[i];
        if (p < 0.0 || p > constraints.p_max_w * (1.0 + rel_tol)) {
            return false;
        }
        if (p <= 0.0) {
            continue;
        }
        const bool wifi = topo.aps[i].tech == Tech::wifi;
        if (data.s_min[i] > 0.0) {
            const double s = wifi ? wifi_sinr_multi(i, alloc, topo)
                                  : lte_sinr_multi(i, alloc, topo, data.factors);
            if (s < data.s_min[i] * (1.0 - rel_tol)) {
                return false;
            }
        }
        if (wifi &&
            wifi_channel_energy_multi(i, alloc, topo, data.sets) >
                lambda * (1.0 + rel_tol)) {
            return false;
        }
    }
    return true;
}

OptResult joint_power_control(const Topology& topo, const RateConstraints& constraints) {
    const auto data = link_data(topo, constraints);
    std::vector<int> active(topo.n_links());
    for (int i = 0; i < topo.n_links(); ++i) {
        active[i] = i;
    }
    BuiltProblem built = build_problem(topo, data, active, data.s_min, constraints);
    GpSolveOutcome outcome =
        solve_gp(built.objective, built.constraints, solver_options(constraints));
    OptResult result;
    if (!outcome.feasible) {
        result.status = OptStatus::infeasible;
        result.alloc = PowerAllocation::uniform(topo.n_links(), 0.0);
        return result;
    }
    result.status = OptStatus::optimal;
    result.alloc = allocation_from(topo, built, outcome.y);
    result.objective = outcome.objective;
    result.kkt_residual = outcome.kkt_residual;
    return result;
}

OptResult relax_and_solve(const Topology& topo, const RateConstraints& constraints) {
    const auto data = link_data(topo, constraints);
    std::vector<int> active(topo.n_links());
    for (int i = 0; i < topo.n_links(); ++i) {
        active[i] = i;
    }
    return solve_with_relaxation(topo, constraints, data, active,
                                 topo.links_of(Tech::lte));
}

PowerAllocation per_rat_power_control(const Topology& topo, Tech rat,
                                      const RateConstraints& constraints) {
    const auto data = link_data(topo, constraints);
    const auto rat_links = topo.links_of(rat);
    const OptResult result =
        solve_with_relaxation(topo, constraints, data, rat_links, rat_links);
    return result.alloc;
}

TimeShareResult optimize_time_share(std::span<const double> wifi_rates,
                                    std::span<const double> lte_rates) {
    double a = 0.0, b = 0.0;
    if (!wifi_rates.empty()) {
        a = *std::min_element(wifi_rates.begin(), wifi_rates.end());
    }
    if (!lte_rates.empty()) {
        b = *std::min_element(lte_rates.begin(), lte_rates.end());
    }
    if (a < 0.0 || b < 0.0) {
        throw std::invalid_argument("optimize_time_share: rates must be >= 0");
    }
    if (a + b <= 0.0) {
        return {{0.5}, 0.0};
    }
    const double eta = b / (a + b);
    return {{eta}, std::min(eta * a, (1.0 - eta) * b)};
}

}  // namespace coexsim
