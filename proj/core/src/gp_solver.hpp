#pragma once

// Internal log-barrier solver for the power-control geometric programs.
// Variables are log-powers; the objective is concave and every constraint is
// a log-sum-exp (plus linear terms), so the barrier subproblems are smooth
// and concave. Inner maximization is damped Newton with backtracking; the
// multipliers 1/(t*(-g_c)) give the KKT residual directly.

#include <utility>
#include <vector>

namespace coexsim::detail {

// S(y) = sum_k coeff_k * exp(y[var_k]) + constant, with coeff_k > 0.
struct LogSum {
    std::vector<std::pair<int, double>> terms;
    double constant = 0.0;

    double sum(const std::vector<double>& y) const;
};

// g(y) = ln(S(y)) + sum linear_j * y_j + constant  (lse skipped when empty
// and constant == 0 sentinel use_lse=false).
struct GpConstraint {
    bool use_lse = false;
    LogSum lse;
    std::vector<std::pair<int, double>> linear;
    double constant = 0.0;
    // Bookkeeping for the relaxation victim rule.
    int owner_link = -1;   // topology link index owning the constraint
    int kind = 0;          // 0 rate, 1 cca, 2 box

    double value(const std::vector<double>& y) const;
};

// F(y) = sum_k weight_k * (y[var_k] + offset_k - ln(denom_k(y))).
struct GpObjective {
    std::vector<double> weight;   // per variable
    std::vector<double> offset;   // ln(G_ii) + ln(beta)
    std::vector<LogSum> denom;    // interference + noise per variable

    double value(const std::vector<double>& y) const;
};

struct GpSolveOutcome {
    bool feasible = false;
    std::vector<double> y;
    double objective = 0.0;
    double kkt_residual = 0.0;
    // Constraint values at the final (or best infeasibility) point.
    std::vector<double> constraint_values;
};

struct GpSolverOptions {
    double grad_tol = 1e-8;
    double t0 = 1.0;
    double mu = 10.0;
    double gap_tol = 1e-9;       // stop when m/t below this
    int max_inner = 120;
    double y_lo = 0.0;           // box in log-power
    double y_hi = 0.0;
};

GpSolveOutcome solve_gp(const GpObjective& objective,
                        const std::vector<GpConstraint>& constraints,
                        const GpSolverOptions& options);

}  // namespace coexsim::detail
