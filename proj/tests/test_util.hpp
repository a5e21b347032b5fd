#pragma once

// Shared generators and independent oracles for the test suites. Everything
// here stays deliberately naive: oracles must not share code paths with the
// implementation they check.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "logconfit/likelihood.hpp"
#include "logconfit/reduce.hpp"
#include "logconfit/simharness.hpp"

namespace testutil {

using logconfit::kInfTime;
using logconfit::PhiVector;
using logconfit::ReducedData;

inline ReducedData make_data(
    const std::vector<std::pair<double, double>>& raw) {
    return logconfit::build_reduced(logconfit::dedupe(raw));
}

/// Random strictly increasing phi with all values < 0: an interior point of
/// dom(l) for any reduced dataset on an m-point grid.
inline PhiVector random_interior_phi(int m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    PhiVector phi(m);
    double v = 0.0;
    for (int j = m - 1; j >= 0; --j) {
        v -= unif(rng);
        phi[j] = v;
    }
    return phi;
}

/// Random concave, nondecreasing phi strictly below 0 (inside the cone and
/// dom(l)): decreasing positive slopes integrated over tau.
inline PhiVector random_cone_phi(const std::vector<double>& tau,
                                 std::mt19937_64& rng) {
    const int m = static_cast<int>(tau.size());
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    std::vector<double> slopes(m - 1);
    double s = unif(rng);
    for (int i = m - 2; i >= 0; --i) {
        s += unif(rng);
        slopes[i] = s;
    }
    PhiVector phi(m);
    phi[0] = 0.0;
    for (int i = 1; i < m; ++i) {
        phi[i] = phi[i - 1] + slopes[i - 1] * (tau[i] - tau[i - 1]);
    }
    const double shift = phi[m - 1] + unif(rng);
    for (double& v : phi) {
        v -= shift;
    }
    return phi;
}

/// Central finite difference of loglik.
inline std::vector<double> fd_grad(const ReducedData& data,
                                   const PhiVector& phi, double h = 1e-6) {
    const int m = data.m();
    std::vector<double> g(m);
    for (int j = 0; j < m; ++j) {
        PhiVector p = phi, q = phi;
        p[j] += h;
        q[j] -= h;
        g[j] = (logconfit::loglik(data, p) - logconfit::loglik(data, q)) /
               (2.0 * h);
    }
    return g;
}

/// Second central difference of loglik.
inline std::vector<double> fd_hess_diag(const ReducedData& data,
                                        const PhiVector& phi,
                                        double h = 1e-4) {
    const int m = data.m();
    const double l0 = logconfit::loglik(data, phi);
    std::vector<double> out(m);
    for (int j = 0; j < m; ++j) {
        PhiVector p = phi, q = phi;
        p[j] += h;
        q[j] -= h;
        out[j] = (logconfit::loglik(data, p) - 2.0 * l0 +
                  logconfit::loglik(data, q)) /
                 (h * h);
    }
    return out;
}

/// Brute-force oracle for the bound-constrained isotonic QP: enumerate
/// every partition into consecutive blocks, set each block to
/// min(weighted mean, cap), keep feasible candidates, take the best.
inline std::vector<double> isotonic_qp_oracle(const std::vector<double>& y,
                                              const std::vector<double>& w,
                                              double cap, bool use_cap) {
    const int k = static_cast<int>(y.size());
    std::vector<double> best;
    double best_obj = std::numeric_limits<double>::infinity();
    for (unsigned mask = 0; mask < (1u << (k - 1)); ++mask) {
        std::vector<double> x(k);
        int start = 0;
        bool feasible = true;
        double last = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < k; ++i) {
            if (i == k - 1 || (mask & (1u << i))) {
                double sw = 0.0, sy = 0.0;
                for (int j = start; j <= i; ++j) {
                    sw += w[j];
                    sy += w[j] * y[j];
                }
                double v = sy / sw;
                if (use_cap) {
                    v = std::min(v, cap);
                }
                if (v < last) {
                    feasible = false;
                    break;
                }
                for (int j = start; j <= i; ++j) {
                    x[j] = v;
                }
                last = v;
                start = i + 1;
            }
        }
        if (!feasible) {
            continue;
        }
        double obj = 0.0;
        for (int j = 0; j < k; ++j) {
            obj += w[j] * (x[j] - y[j]) * (x[j] - y[j]);
        }
        if (obj < best_obj - 1e-15) {
            best_obj = obj;
            best = x;
        }
    }
    return best;
}

/// Dense dot product with the basis vector b_j (b_1 = ones,
/// b_j = min(tau_i - tau_j, 0)); the O(m^2) oracle for the prefix-sum
/// recursion.
inline double dense_basis_dot(const std::vector<double>& tau,
                              const std::vector<double>& x, int j) {
    const int m = static_cast<int>(tau.size());
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
        s += (j == 1 ? 1.0 : std::min(tau[i] - tau[j - 1], 0.0)) * x[i];
    }
    return s;
}

/// Two-stage dense grid search for the constrained maximizer on small
/// grids: a coarse sweep of the monotone/concave/capped cone in phi,
/// refined once around the best point at step `fine_step`. Exponential in
/// m; intended for m <= 3.
inline PhiVector grid_search_optimum(const ReducedData& data,
                                     double fine_step = 1e-3) {
    const int m = data.m();
    const auto& tau = data.tau;
    auto feasible = [&](const PhiVector& phi) {
        for (int i = 1; i + 1 < m; ++i) {
            const double s1 = (phi[i] - phi[i - 1]) / (tau[i] - tau[i - 1]);
            const double s2 = (phi[i + 1] - phi[i]) / (tau[i + 1] - tau[i]);
            if (s2 > s1 + 1e-12) {
                return false;
            }
        }
        for (int i = 1; i < m; ++i) {
            if (phi[i] < phi[i - 1]) {
                return false;
            }
        }
        return phi[m - 1] <= 0.0;
    };

    auto sweep = [&](const PhiVector& lo, const PhiVector& hi, double step) {
        PhiVector best;
        double best_l = -std::numeric_limits<double>::infinity();
        std::vector<int> steps(m);
        for (int j = 0; j < m; ++j) {
            steps[j] = static_cast<int>(std::floor((hi[j] - lo[j]) / step)) + 1;
        }
        PhiVector phi(m);
        std::vector<int> idx(m, 0);
        while (true) {
            for (int j = 0; j < m; ++j) {
                phi[j] = std::min(lo[j] + idx[j] * step, 0.0);
            }
            if (feasible(phi)) {
                const double l = logconfit::loglik(data, phi);
                if (l > best_l) {
                    best_l = l;
                    best = phi;
                }
            }
            int j = m - 1;
            while (j >= 0 && ++idx[j] >= steps[j]) {
                idx[j--] = 0;
            }
            if (j < 0) {
                break;
            }
        }
        return best;
    };

    const double coarse = 0.04;
    PhiVector lo(m, std::log(5e-3)), hi(m, 0.0);
    PhiVector best = sweep(lo, hi, coarse);
    for (int j = 0; j < m; ++j) {
        lo[j] = best[j] - coarse;
        hi[j] = std::min(best[j] + coarse, 0.0);
    }
    return sweep(lo, hi, fine_step);
}

/// Case-2 censored sample from a truncated law, as one raw interval list.
inline std::vector<std::pair<double, double>> case2_sample(
    const logconfit::EventLaw& law, const logconfit::CensoringScheme& cens,
    int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::pair<double, double>> raw;
    raw.reserve(n);
    for (int i = 0; i < n; ++i) {
        raw.push_back(logconfit::censor(cens, law.sample(unif(rng)), rng));
    }
    return raw;
}

} // namespace testutil
