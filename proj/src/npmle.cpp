#include "logconfit/npmle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "logconfit/errors.hpp"
#include "logconfit/isotonic.hpp"

namespace logconfit {

namespace {

// Gradient and negated Hessian diagonal of the likelihood on the
// probability scale.
void derivatives_F(const ReducedData& data, const std::vector<double>& F,
                   std::vector<double>& g, std::vector<double>& d) {
    const int m = data.m();
    g.assign(m, 0.0);
    d.assign(m, 0.0);
    for (const auto& o : data.obs) {
        switch (o.cls) {
        case ObsClass::LeftTail: {
            const double fr = F[o.r - 1];
            g[o.r - 1] += o.weight / fr;
            d[o.r - 1] += o.weight / (fr * fr);
            break;
        }
        case ObsClass::RightCensored: {
            const double s = 1.0 - F[o.l - 1];
            g[o.l - 1] -= o.weight / s;
            d[o.l - 1] += o.weight / (s * s);
            break;
        }
        case ObsClass::Interior: {
            const double diff = F[o.r - 1] - F[o.l - 1];
            g[o.r - 1] += o.weight / diff;
            g[o.l - 1] -= o.weight / diff;
            d[o.r - 1] += o.weight / (diff * diff);
            d[o.l - 1] += o.weight / (diff * diff);
            break;
        }
        case ObsClass::Vacuous:
            break;
        }
    }
}

} // namespace

StepEstimate fit_unconstrained(const ReducedData& data, double tol,
                               int max_iter) {
    const int m = data.m();
    // Masses p_j over (tau_{j-1}, tau_j], j = 1..m, plus the tail beyond
    // tau_m.
    std::vector<double> p(m + 1, 1.0 / (m + 1));
    std::vector<double> F(m);
    auto cumulate = [&]() {
        double c = 0.0;
        for (int j = 0; j < m; ++j) {
            c += p[j];
            F[j] = c;
        }
    };
    cumulate();

    double total_w = 0.0;
    for (const auto& o : data.obs) {
        total_w += o.weight;
    }

    std::vector<double> coef(m + 3), g, d;
    double self_res = 0.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        const std::vector<double> F_old = F;

        // EM (self-consistency) step via a difference array: each
        // observation spreads w/denominator over the index range it covers.
        std::fill(coef.begin(), coef.end(), 0.0);
        for (const auto& o : data.obs) {
            const double fl = o.l == 0 ? 0.0 : F[o.l - 1];
            const double fr = o.r == m + 1 ? 1.0 : F[o.r - 1];
            const double denom = fr - fl;
            if (!(denom > 0.0)) {
                continue; // zero-mass range contributes nothing this round
            }
            coef[o.l + 1] += o.weight / denom;
            coef[o.r + 1] -= o.weight / denom;
        }
        double run = 0.0;
        self_res = 0.0;
        for (int j = 1; j <= m + 1; ++j) {
            run += coef[j];
            const double p_new = p[j - 1] * run / total_w;
            self_res = std::max(self_res, std::abs(p_new - p[j - 1]));
            p[j - 1] = p_new;
        }
        cumulate();

        // ICM polish on the cumulative scale; skipped when the projected
        // step fails to improve.
        derivatives_F(data, F, g, d);
        const double dmax = *std::max_element(d.begin(), d.end());
        const double floor = 1e-8 * std::max(1.0, dmax);
        WeightedSequence seq;
        seq.targets.resize(m);
        seq.weights.resize(m);
        for (int j = 0; j < m; ++j) {
            seq.weights[j] = std::max(d[j], floor);
            seq.targets[j] = F[j] + g[j] / seq.weights[j];
        }
        auto cand = pava_increasing(seq);
        for (double& x : cand) {
            x = std::clamp(x, 0.0, 1.0);
        }
        const double l_cur = loglik_F(data, F);
        double lambda = 1.0;
        for (int halving = 0; halving < 40; ++halving) {
            std::vector<double> trial(m);
            for (int j = 0; j < m; ++j) {
                trial[j] = F[j] + lambda * (cand[j] - F[j]);
            }
            if (loglik_F(data, trial) > l_cur) {
                F = std::move(trial);
                for (int j = m - 1; j > 0; --j) {
                    p[j] = F[j] - F[j - 1];
                }
                p[0] = F[0];
                p[m] = 1.0 - F[m - 1];
                break;
            }
            lambda *= 0.5;
        }

        double change = 0.0;
        for (int j = 0; j < m; ++j) {
            change = std::max(change, std::abs(F[j] - F_old[j]));
        }
        if (change < tol) {
            ++it;
            break;
        }
    }
    if (it == max_iter) {
        throw NonConvergence("fit_unconstrained: max iterations reached");
    }

    StepEstimate est;
    est.F = F;
    est.iterations = it;
    est.self_consistency_residual = self_res;
    double prev = 0.0;
    for (int j = 0; j < m; ++j) {
        if (F[j] - prev > 1e-12) {
            est.jump_points.push_back(data.tau[j]);
            est.values.push_back(F[j]);
        }
        prev = F[j];
    }
    return est;
}

PhiVector lcm_log_init(const StepEstimate& un, const ReducedData& data) {
    const int m = data.m();
    if (!(un.F.front() > 0.0)) {
        throw std::invalid_argument("lcm_log_init: F(tau_1) must be positive");
    }
    std::vector<double> y(m);
    for (int j = 0; j < m; ++j) {
        y[j] = std::log(un.F[j]);
    }

    // Upper concave hull of (tau_j, y_j) by a single monotone scan.
    std::vector<int> hull;
    auto slope = [&](int a, int b) {
        return (y[b] - y[a]) / (data.tau[b] - data.tau[a]);
    };
    for (int j = 0; j < m; ++j) {
        while (hull.size() >= 2 &&
               slope(hull[hull.size() - 2], hull.back()) <=
                   slope(hull.back(), j)) {
            hull.pop_back();
        }
        hull.push_back(j);
    }

    PhiVector phi(m);
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        const int a = hull[s];
        const int b = hull[s + 1];
        for (int j = a; j < b; ++j) {
            const double q = (data.tau[b] - data.tau[j]) / (data.tau[b] - data.tau[a]);
            phi[j] = q * y[a] + (1.0 - q) * y[b];
        }
    }
    phi[hull.back()] = y[hull.back()];
    for (double& v : phi) {
        v = std::min(v, 0.0);
    }
    return phi;
}

PhiVector linear_fallback_init(const ReducedData& data) {
    const int m = data.m();
    const double lo = std::log(1e-3);
    const double hi = std::log(0.999);
    PhiVector phi(m);
    if (m == 1) {
        phi[0] = std::log(0.5);
        return phi;
    }
    const double span = data.tau[m - 1] - data.tau[0];
    for (int j = 0; j < m; ++j) {
        phi[j] = lo + (data.tau[j] - data.tau[0]) / span * (hi - lo);
    }
    return phi;
}

} // namespace logconfit
