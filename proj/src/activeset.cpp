#include "logconfit/activeset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "logconfit/errors.hpp"

namespace logconfit {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double violation(const std::vector<double>& tau, const PhiVector& phi, int i) {
    const int m = static_cast<int>(tau.size());
    if (i < 2 || i > m) {
        throw std::invalid_argument("violation: constraint index out of range");
    }
    if (i == m) {
        return phi[m - 2] - phi[m - 1];
    }
    const double dt_i = tau[i - 1] - tau[i - 2];
    const double dt_next = tau[i] - tau[i - 1];
    return phi[i - 2] / dt_i - (1.0 / dt_next + 1.0 / dt_i) * phi[i - 1] +
           phi[i] / dt_next;
}

std::vector<int> active_set(const std::vector<double>& tau,
                            const PhiVector& phi) {
    const int m = static_cast<int>(tau.size());
    std::vector<int> a;
    for (int i = 2; i <= m; ++i) {
        if (violation(tau, phi, i) >= -kActiveTol) {
            a.push_back(i);
        }
    }
    return a;
}

std::vector<double> basis_scores(const std::vector<double>& tau,
                                 const std::vector<double>& x) {
    const int m = static_cast<int>(tau.size());
    std::vector<double> scores(m);
    double total = 0.0;
    for (double v : x) {
        total += v;
    }
    scores[0] = total;
    double prefix = 0.0;
    double running = 0.0;
    for (int j = 2; j <= m; ++j) {
        prefix += x[j - 2];
        running += (tau[j - 2] - tau[j - 1]) * prefix;
        scores[j - 1] = running;
    }
    return scores;
}

std::vector<double> knot_scores(const ReducedData& data, const PhiVector& phi) {
    return basis_scores(data.tau, grad(data, phi));
}

std::pair<double, PhiVector> mix_step(const std::vector<double>& tau,
                                      const PhiVector& phi,
                                      const PhiVector& cand) {
    const int m = static_cast<int>(tau.size());
    double t = std::numeric_limits<double>::infinity();
    // The m-th constraint never enters: both points satisfy it.
    for (int i = 2; i <= m - 1; ++i) {
        const double vc = violation(tau, cand, i);
        if (vc > kActiveTol) {
            const double vp = violation(tau, phi, i);
            t = std::min(t, -vp / (vc - vp));
        }
    }
    if (!std::isfinite(t)) {
        throw std::invalid_argument("mix_step: candidate already in K");
    }
    t = std::clamp(t, 0.0, 1.0);
    PhiVector mixed(m);
    for (int j = 0; j < m; ++j) {
        mixed[j] = (1.0 - t) * phi[j] + t * cand[j];
    }
    return {t, mixed};
}

namespace {

bool in_cone(const std::vector<double>& tau, const PhiVector& phi) {
    const int m = static_cast<int>(tau.size());
    for (int i = 2; i <= m - 1; ++i) {
        if (violation(tau, phi, i) > kActiveTol) {
            return false;
        }
    }
    return true;
}

} // namespace

std::pair<PhiVector, KnotSet> conditional_optimize(const ReducedData& data,
                                                   PhiVector phi,
                                                   std::vector<int> active,
                                                   double inner_tol) {
    const int m = data.m();
    for (int round = 0; round <= m + 1; ++round) {
        KnotSet ks = KnotSet::from_active(active, m);
        PhiVector cand = solve_subproblem(data, ks, phi, inner_tol);
        if (in_cone(data.tau, cand)) {
            return {std::move(cand), std::move(ks)};
        }
        auto [t, mixed] = mix_step(data.tau, phi, cand);
        phi = std::move(mixed);
        active = active_set(data.tau, phi);
    }
    // Each mix activates a new constraint, so the loop is bounded by m.
    throw NonConvergence("conditional_optimize: mixing did not terminate");
}

ActiveSetResult fit_logconcave(const ReducedData& data, const PhiVector& phi0,
                               const FitControl& control) {
    const int m = data.m();
    if (static_cast<int>(phi0.size()) != m) {
        throw std::invalid_argument("fit_logconcave: phi0 length mismatch");
    }
    if (!in_cone(data.tau, phi0) || !std::isfinite(loglik(data, phi0))) {
        throw StartInfeasible("fit_logconcave: phi0 not in K ∩ dom(l)");
    }
    const int max_outer = control.max_outer > 0 ? control.max_outer : 10 * m;

    auto [phi, ks] =
        conditional_optimize(data, phi0, active_set(data.tau, phi0),
                             control.inner_tol);
    double l_cur = loglik(data, phi);

    int outer = 0;
    bool converged = false;
    for (; outer < max_outer; ++outer) {
        const auto scores = knot_scores(data, phi);
        const auto active = ks.active();
        double best = kNegInf;
        int best_a = 0;
        for (int a : active) {
            if (scores[a - 1] > best) {
                best = scores[a - 1];
                best_a = a;
            }
        }
        if (active.empty() || best <= control.eta) {
            converged = true;
            break;
        }

        std::vector<int> next_active;
        next_active.reserve(active.size() - 1);
        for (int a : active) {
            if (a != best_a) {
                next_active.push_back(a);
            }
        }
        auto [phi_new, ks_new] =
            conditional_optimize(data, phi, std::move(next_active),
                                 control.inner_tol);
        const double l_new = loglik(data, phi_new);
        phi = std::move(phi_new);
        ks = std::move(ks_new);
        const double dl = l_new - l_cur;
        l_cur = l_new;
        if (std::abs(dl) < control.eta) {
            converged = true;
            ++outer;
            break;
        }
    }
    if (!converged) {
        throw NonConvergence("fit_logconcave: max outer iterations reached");
    }

    ActiveSetResult res;
    const auto scores = knot_scores(data, phi);
    res.certificate_active = 0.0;
    for (int a : ks.active()) {
        res.certificate_active = std::max(res.certificate_active, scores[a - 1]);
    }
    // Knot-direction residual. The all-ones direction (index 1) is the only
    // basis vector that moves phi_m; when the bound phi_m <= 0 binds, only
    // the downward direction is feasible and the condition is one-sided.
    res.certificate_knots = 0.0;
    for (int j : ks.knots) {
        double r;
        if (j == 1 && phi[m - 1] >= -kActiveTol) {
            r = std::max(-scores[0], 0.0);
        } else {
            r = std::abs(scores[j - 1]);
        }
        res.certificate_knots = std::max(res.certificate_knots, r);
    }
    res.phi = std::move(phi);
    res.knots = std::move(ks);
    res.loglik = l_cur;
    res.outer_iterations = outer;
    return res;
}

} // namespace logconfit
