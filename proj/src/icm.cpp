#include "logconfit/icm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "logconfit/errors.hpp"
#include "logconfit/isotonic.hpp"

namespace logconfit {

namespace {

// For each grid index j (0-based), the segment s and weight q such that
// phi_j = q * phi_bar[s] + (1-q) * phi_bar[s+1] (tail: q == 1 on the last
// knot's segment).
struct SegWeight {
    int s;
    double q;
};

std::vector<SegWeight> segment_weights(const std::vector<double>& tau,
                                       const KnotSet& ks) {
    const int m = ks.m;
    const int k = ks.k();
    std::vector<SegWeight> seg(m);
    for (int s = 0; s + 1 < k; ++s) {
        const int a = ks.knots[s];
        const int b = ks.knots[s + 1];
        const double span = tau[b - 1] - tau[a - 1];
        for (int j = a; j < b; ++j) {
            seg[j - 1] = {s, (tau[b - 1] - tau[j - 1]) / span};
        }
    }
    for (int j = ks.knots[k - 1]; j <= m; ++j) {
        seg[j - 1] = {k - 1, 1.0};
    }
    return seg;
}

} // namespace

KnotSet KnotSet::from_active(const std::vector<int>& active, int m) {
    std::vector<char> is_active(m + 1, 0);
    for (int a : active) {
        if (a < 2 || a > m) {
            throw std::invalid_argument("KnotSet: active index out of range");
        }
        is_active[a] = 1;
    }
    KnotSet ks;
    ks.m = m;
    for (int j = 1; j <= m; ++j) {
        if (!is_active[j]) {
            ks.knots.push_back(j);
        }
    }
    return ks;
}

std::vector<int> KnotSet::active() const {
    std::vector<char> is_knot(m + 1, 0);
    for (int j : knots) {
        is_knot[j] = 1;
    }
    std::vector<int> a;
    for (int j = 2; j <= m; ++j) {
        if (!is_knot[j]) {
            a.push_back(j);
        }
    }
    return a;
}

PhiVector expand(const std::vector<double>& tau, const KnotSet& ks,
                 const std::vector<double>& phi_bar) {
    if (static_cast<int>(phi_bar.size()) != ks.k()) {
        throw std::invalid_argument("expand: phi_bar length != knot count");
    }
    const auto seg = segment_weights(tau, ks);
    PhiVector phi(ks.m);
    for (int j = 0; j < ks.m; ++j) {
        const auto [s, q] = seg[j];
        phi[j] = q == 1.0 ? phi_bar[s]
                          : q * phi_bar[s] + (1.0 - q) * phi_bar[s + 1];
    }
    return phi;
}

std::vector<double> reduced_grad(const ReducedData& data, const PhiVector& phi,
                                 const KnotSet& ks) {
    const auto g = grad(data, phi);
    const auto seg = segment_weights(data.tau, ks);
    std::vector<double> gbar(ks.k(), 0.0);
    for (int j = 0; j < ks.m; ++j) {
        const auto [s, q] = seg[j];
        gbar[s] += q * g[j];
        if (q != 1.0) {
            gbar[s + 1] += (1.0 - q) * g[j];
        }
    }
    return gbar;
}

std::vector<double> reduced_hess_diag(const ReducedData& data,
                                      const PhiVector& phi, const KnotSet& ks) {
    const auto h = hess_diag(data, phi);
    const auto seg = segment_weights(data.tau, ks);
    std::vector<double> d(ks.k(), 0.0);
    for (int j = 0; j < ks.m; ++j) {
        const auto [s, q] = seg[j];
        d[s] -= q * q * h[j];
        if (q != 1.0) {
            d[s + 1] -= (1.0 - q) * (1.0 - q) * h[j];
        }
    }
    const double dmax = *std::max_element(d.begin(), d.end());
    const double floor = 1e-8 * std::max(1.0, dmax);
    for (double& x : d) {
        x = std::max(x, floor);
    }
    return d;
}

PhiVector solve_subproblem(const ReducedData& data, const KnotSet& ks,
                           const PhiVector& phi_start, double tol,
                           IcmDiagnostics* diag, int max_iter) {
    const int k = ks.k();
    std::vector<double> phi_bar(k);
    for (int s = 0; s < k; ++s) {
        phi_bar[s] = phi_start[ks.knots[s] - 1];
    }
    for (int s = 0; s < k; ++s) {
        if (phi_bar[s] > 0.0 || (s > 0 && phi_bar[s] < phi_bar[s - 1])) {
            throw StartInfeasible("solve_subproblem: start not in M");
        }
    }
    {
        const PhiVector p = expand(data.tau, ks, phi_bar);
        for (int j = 0; j < ks.m; ++j) {
            if (std::abs(p[j] - phi_start[j]) > 1e-8 * std::max(1.0, std::abs(p[j]))) {
                throw StartInfeasible("solve_subproblem: start not in V(A)");
            }
        }
    }

    double l_cur = loglik(data, expand(data.tau, ks, phi_bar));
    if (!std::isfinite(l_cur)) {
        throw StartInfeasible("solve_subproblem: start outside dom(l)");
    }

    double last_step = 0.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        const PhiVector phi = expand(data.tau, ks, phi_bar);
        const auto gbar = reduced_grad(data, phi, ks);
        const auto d = reduced_hess_diag(data, phi, ks);

        WeightedSequence seq;
        seq.targets.resize(k);
        seq.weights = d;
        for (int s = 0; s < k; ++s) {
            seq.targets[s] = phi_bar[s] + gbar[s] / d[s];
        }
        const auto cand = pava_increasing_capped(seq, 0.0);

        double step = 0.0;
        for (int s = 0; s < k; ++s) {
            step = std::max(step, std::abs(cand[s] - phi_bar[s]));
        }
        last_step = step;
        if (step < tol) {
            break;
        }

        // Step-halving: a full ICM step may overshoot (or leave dom(l),
        // where l evaluates to -inf and forces a halving).
        double lambda = 1.0;
        bool accepted = false;
        bool stalled = false;
        std::vector<double> trial(k);
        for (int halving = 0; halving < 60; ++halving) {
            for (int s = 0; s < k; ++s) {
                trial[s] = phi_bar[s] + lambda * (cand[s] - phi_bar[s]);
            }
            const double l_trial = loglik(data, expand(data.tau, ks, trial));
            if (l_trial > l_cur) {
                phi_bar = trial;
                l_cur = l_trial;
                accepted = true;
                break;
            }
            if (l_trial == l_cur) {
                // No representable improvement left along the ascent
                // direction: the iterate is at numerical optimality.
                stalled = true;
                break;
            }
            lambda *= 0.5;
        }
        if (stalled) {
            break;
        }
        if (!accepted) {
            throw NonConvergence("solve_subproblem: backtracking failed to ascend");
        }
    }
    if (it == max_iter) {
        throw NonConvergence("solve_subproblem: max iterations reached");
    }

    if (diag) {
        diag->iterations = it;
        diag->final_step = last_step;
    }
    return expand(data.tau, ks, phi_bar);
}

} // namespace logconfit
