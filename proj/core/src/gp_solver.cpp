#include "gp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coexsim::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense symmetric positive-definite solve (Cholesky with adaptive jitter).
// A is row-major n x n, overwritten. Returns false when hopeless.
bool solve_spd(std::vector<double> a, std::vector<double>& rhs, int n) {
    const std::vector<double> a0 = a;
    const std::vector<double> r0 = rhs;
    double jitter = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        if (attempt > 0) {
            a = a0;
            rhs = r0;
            double dmax = 0.0;
            for (int i = 0; i < n; ++i) {
                dmax = std::max(dmax, std::abs(a[i * n + i]));
            }
            jitter = (jitter == 0.0 ? 1e-12 : jitter * 100.0) * std::max(dmax, 1.0);
            for (int i = 0; i < n; ++i) {
                a[i * n + i] += jitter;
            }
        }
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            for (int j = 0; j <= i; ++j) {
                double s = a[i * n + j];
                for (int k = 0; k < j; ++k) {
                    s -= a[i * n + k] * a[j * n + k];
                }
                if (i == j) {
                    if (s <= 0.0 || !std::isfinite(s)) {
                        ok = false;
                        break;
                    }
                    a[i * n + i] = std::sqrt(s);
                } else {
                    a[i * n + j] = s / a[j * n + j];
                }
            }
        }
        if (!ok) {
            continue;
        }
        for (int i = 0; i < n; ++i) {
            double s = rhs[i];
            for (int k = 0; k < i; ++k) {
                s -= a[i * n + k] * rhs[k];
            }
            rhs[i] = s / a[i * n + i];
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = rhs[i];
            for (int k = i + 1; k < n; ++k) {
                s -= a[k * n + i] * rhs[k];
            }
            rhs[i] = s / a[i * n + i];
        }
        return true;
    }
    return false;
}

}  // namespace

double LogSum::sum(const std::vector<double>& y) const {
    double s = constant;
    for (const auto& [var, coeff] : terms) {
        s += coeff * std::exp(y[var]);
    }
    return s;
}

double GpConstraint::value(const std::vector<double>& y) const {
    double v = constant;
    if (use_lse) {
        v += std::log(lse.sum(y));
    }
    for (const auto& [var, coeff] : linear) {
        v += coeff * y[var];
    }
    return v;
}

double GpObjective::value(const std::vector<double>& y) const {
    double f = 0.0;
    for (size_t k = 0; k < weight.size(); ++k) {
        f += weight[k] * (y[k] + offset[k] - std::log(denom[k].sum(y)));
    }
    return f;
}

namespace {

// Accumulates value, gradient and Hessian of w * ln(S(y)).
void add_log_sum(const LogSum& lse, const std::vector<double>& y, double w,
                 double& value, std::vector<double>* grad, std::vector<double>* hess,
                 int n, std::vector<double>& q_scratch) {
    const double s = lse.sum(y);
    value += w * std::log(s);
    if (grad == nullptr) {
        return;
    }
    q_scratch.assign(lse.terms.size(), 0.0);
    for (size_t k = 0; k < lse.terms.size(); ++k) {
        q_scratch[k] = lse.terms[k].second * std::exp(y[lse.terms[k].first]) / s;
        (*grad)[lse.terms[k].first] += w * q_scratch[k];
    }
    if (hess == nullptr) {
        return;
    }
    // d2 ln S = diag(q) - q q^T over the participating variables.
    for (size_t k = 0; k < lse.terms.size(); ++k) {
        const int i = lse.terms[k].first;
        (*hess)[i * n + i] += w * q_scratch[k];
        for (size_t l = 0; l < lse.terms.size(); ++l) {
            const int j = lse.terms[l].first;
            (*hess)[i * n + j] -= w * q_scratch[k] * q_scratch[l];
        }
    }
}

struct BarrierEval {
    double value = -kInf;
    std::vector<double> grad;
    std::vector<double> hess;
    bool in_domain = false;
};

// Barrier function Phi(y) = F(y) + (1/t) sum ln(-g_c(y)) for phase 2, or
// Phi(y,s) = -s + (1/t) sum ln(s - g_c(y)) for phase 1 (objective == null).
class Barrier {
public:
    Barrier(const GpObjective* objective, const std::vector<GpConstraint>& cons,
            int n_vars, bool phase1)
        : obj_(objective), cons_(cons), n_(n_vars), phase1_(phase1) {}

    int dim() const { return phase1_ ? n_ + 1 : n_; }

    BarrierEval eval(const std::vector<double>& z, double t, bool want_hess) const {
        BarrierEval out;
        const int d = dim();
        std::vector<double> y(z.begin(), z.begin() + n_);
        const double s_var = phase1_ ? z[n_] : 0.0;
        out.grad.assign(d, 0.0);
        if (want_hess) {
            out.hess.assign(d * d, 0.0);
        }
        double value = 0.0;

        std::vector<double> g_grad(n_);
        std::vector<double> g_hess;
        std::vector<double> q;

        if (obj_ != nullptr) {
            // F = sum w_k (y_k + off_k - ln denom_k)
            for (int k = 0; k < n_; ++k) {
                value += obj_->weight[k] * (y[k] + obj_->offset[k]);
                out.grad[k] += obj_->weight[k];
            }
            for (int k = 0; k < n_; ++k) {
                double dummy = 0.0;
                std::vector<double> gneg(n_, 0.0);
                std::vector<double> hneg;
                if (want_hess) {
                    hneg.assign(n_ * n_, 0.0);
                }
                add_log_sum(obj_->denom[k], y, 1.0, dummy, &gneg,
                            want_hess ? &hneg : nullptr, n_, q);
                value -= obj_->weight[k] * dummy;
                for (int i = 0; i < n_; ++i) {
                    out.grad[i] -= obj_->weight[k] * gneg[i];
                }
                if (want_hess) {
                    for (int i = 0; i < n_; ++i) {
                        for (int j = 0; j < n_; ++j) {
                            out.hess[i * d + j] -= obj_->weight[k] * hneg[i * n_ + j];
                        }
                    }
                }
            }
        } else {
            value -= s_var;
            out.grad[n_] -= 1.0;
        }

        for (const auto& c : cons_) {
            // slack h = -g (phase 2) or s - g (phase 1); need h > 0
            double g_val = c.constant;
            std::fill(g_grad.begin(), g_grad.end(), 0.0);
            if (want_hess) {
                g_hess.assign(n_ * n_, 0.0);
            }
            if (c.use_lse) {
                add_log_sum(c.lse, y, 1.0, g_val, &g_grad,
                            want_hess ? &g_hess : nullptr, n_, q);
            }
            for (const auto& [var, coeff] : c.linear) {
                g_val += coeff * y[var];
                g_grad[var] += coeff;
            }
            const double h = (phase1_ ? s_var : 0.0) - g_val;
            if (h <= 0.0 || !std::isfinite(h)) {
                return out;  // outside barrier domain
            }
            value += std::log(h) / t;
            // d ln h = (ds - dg)/h
            for (int i = 0; i < n_; ++i) {
                out.grad[i] -= g_grad[i] / (h * t);
            }
            if (phase1_) {
                out.grad[n_] += 1.0 / (h * t);
            }
            if (want_hess) {
                // d2 ln h = -d2g/h - (ds - dg)(ds - dg)^T / h^2
                for (int i = 0; i < n_; ++i) {
                    for (int j = 0; j < n_; ++j) {
                        out.hess[i * d + j] -= g_hess[i * n_ + j] / (h * t);
                    }
                }
                const double inv_h2t = 1.0 / (h * h * t);
                for (int i = 0; i < n_; ++i) {
                    if (g_grad[i] == 0.0) {
                        continue;
                    }
                    for (int j = 0; j < n_; ++j) {
                        if (g_grad[j] != 0.0) {
                            out.hess[i * d + j] -= g_grad[i] * g_grad[j] * inv_h2t;
                        }
                    }
                    if (phase1_) {
                        out.hess[i * d + n_] += g_grad[i] * inv_h2t;
                        out.hess[n_ * d + i] += g_grad[i] * inv_h2t;
                    }
                }
                if (phase1_) {
                    out.hess[n_ * d + n_] -= inv_h2t;
                }
            }
        }
        out.value = value;
        out.in_domain = true;
        return out;
    }

private:
    const GpObjective* obj_;
    const std::vector<GpConstraint>& cons_;
    int n_;
    bool phase1_;
};

// Damped Newton ascent on the (concave) barrier subproblem.
// Returns the infinity norm of the gradient at exit.
double newton_ascend(const Barrier& barrier, std::vector<double>& z, double t,
                     const GpSolverOptions& opt) {
    const int d = barrier.dim();
    double grad_inf = kInf;
    for (int it = 0; it < opt.max_inner; ++it) {
        BarrierEval e = barrier.eval(z, t, true);
        if (!e.in_domain) {
            break;  // should not happen: steps stay inside
        }
        grad_inf = 0.0;
        for (double g : e.grad) {
            grad_inf = std::max(grad_inf, std::abs(g));
        }
        if (grad_inf < opt.grad_tol) {
            break;
        }
        // Newton direction: (-H) dir = grad, -H positive definite.
        std::vector<double> neg_h(d * d);
        for (int i = 0; i < d * d; ++i) {
            neg_h[i] = -e.hess[i];
        }
        std::vector<double> dir = e.grad;
        bool have_newton = solve_spd(std::move(neg_h), dir, d);
        double slope = 0.0;
        if (have_newton) {
            for (int i = 0; i < d; ++i) {
                slope += e.grad[i] * dir[i];
            }
            if (!(slope > 0.0) || !std::isfinite(slope)) {
                have_newton = false;
            }
        }
        if (!have_newton) {
            dir = e.grad;  // gradient fallback
            slope = 0.0;
            for (int i = 0; i < d; ++i) {
                slope += dir[i] * dir[i];
            }
        }
        double step = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
            std::vector<double> trial = z;
            for (int i = 0; i < d; ++i) {
                trial[i] += step * dir[i];
            }
            BarrierEval te = barrier.eval(trial, t, false);
            if (te.in_domain && te.value >= e.value + 1e-4 * step * slope) {
                z = std::move(trial);
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) {
            break;  // line search exhausted; gradient is our residual
        }
    }
    return grad_inf;
}

}  // namespace

GpSolveOutcome solve_gp(const GpObjective& objective,
                        const std::vector<GpConstraint>& constraints,
                        const GpSolverOptions& options) {
    const int n = static_cast<int>(objective.weight.size());
    GpSolveOutcome out;
    out.y.assign(n, 0.5 * (options.y_lo + options.y_hi));

    const double m = static_cast<double>(constraints.size());

    // Phase 1: minimize the worst violation s.
    {
        Barrier barrier(nullptr, constraints, n, true);
        std::vector<double> z(n + 1, 0.0);
        for (int i = 0; i < n; ++i) {
            z[i] = out.y[i];
        }
        double worst = -kInf;
        for (const auto& c : constraints) {
            worst = std::max(worst, c.value(out.y));
        }
        z[n] = worst + 1.0;
        bool strictly_feasible = false;
        for (double t = options.t0; ; t *= options.mu) {
            newton_ascend(barrier, z, t, options);
            if (z[n] < -1e-7) {
                strictly_feasible = true;
                break;
            }
            if ((m + 1.0) / t < options.gap_tol) {
                strictly_feasible = z[n] < -1e-12;
                break;
            }
        }
        for (int i = 0; i < n; ++i) {
            out.y[i] = z[i];
        }
        out.constraint_values.clear();
        for (const auto& c : constraints) {
            out.constraint_values.push_back(c.value(out.y));
        }
        if (!strictly_feasible) {
            out.feasible = false;
            return out;
        }
    }

    // Phase 2: barrier ascent on the objective from the interior point.
    Barrier barrier(&objective, constraints, n, false);
    double grad_inf = kInf;
    double t_final = options.t0;
    for (double t = options.t0; ; t *= options.mu) {
        grad_inf = newton_ascend(barrier, out.y, t, options);
        t_final = t;
        if (m / t < options.gap_tol) {
            break;
        }
    }
    out.feasible = true;
    out.objective = objective.value(out.y);
    out.kkt_residual = std::max(grad_inf, 1.0 / t_final);
    out.constraint_values.clear();
    for (const auto& c : constraints) {
        out.constraint_values.push_back(c.value(out.y));
    }
    return out;
}

}  // namespace coexsim::detail
