#pragma once

#include <vector>

#include "logconfit/icm.hpp"
#include "logconfit/likelihood.hpp"
#include "logconfit/reduce.hpp"

namespace logconfit {

/// Slack tolerance when classifying a constraint as active: mixing lands
/// exactly on a hyperplane only in exact arithmetic.
inline constexpr double kActiveTol = 1e-12;

/// v_i' phi for one log-concavity/monotonicity constraint, i in 2..m.
/// Interior i: divided second difference of phi in tau; i == m:
/// phi_{m-1} - phi_m.
double violation(const std::vector<double>& tau, const PhiVector& phi, int i);

/// The active set A(phi) = {i in 2..m : v_i' phi >= -kActiveTol}.
std::vector<int> active_set(const std::vector<double>& tau,
                            const PhiVector& phi);

/// All m basis scores b_j' x for the basis b_1 = 1,
/// b_j = (min(tau_i - tau_j, 0))_i, computed by the prefix-sum recursion
/// in O(m).
std::vector<double> basis_scores(const std::vector<double>& tau,
                                 const std::vector<double>& x);

/// b_j' grad l(phi) for j = 1..m; the knot-addition and stopping scores.
std::vector<double> knot_scores(const ReducedData& data, const PhiVector& phi);

/// Largest t in (0,1] keeping (1-t) phi + t cand inside K, and the mixed
/// point. Requires cand outside K (some interior constraint violated).
std::pair<double, PhiVector> mix_step(const std::vector<double>& tau,
                                      const PhiVector& phi,
                                      const PhiVector& cand);

/// Replace a feasible point by a conditionally optimal one: solve the
/// equality-constrained subproblem for the current active set, mix back
/// into K whenever the candidate leaves it, and repeat until it does not.
std::pair<PhiVector, KnotSet> conditional_optimize(const ReducedData& data,
                                                   PhiVector phi,
                                                   std::vector<int> active,
                                                   double inner_tol);

struct ActiveSetResult {
    PhiVector phi;
    KnotSet knots;
    double loglik = 0.0;
    double certificate_active = 0.0; // max_{a in A} b_a' grad l
    double certificate_knots = 0.0;  // max_{i not in A} |b_i' grad l|
    int outer_iterations = 0;
};

struct FitControl {
    double eta = 1e-10;       // certificate / log-lik change tolerance
    double inner_tol = 1e-10; // ICM sup-norm step tolerance
    int max_outer = 0;        // 0 => 10 * m
};

/// The outer active-set loop: alternate conditional optimization with knot
/// addition at the smallest index among the largest positive basis scores,
/// until the optimality certificate holds (or the log-likelihood change
/// between outer iterations drops below eta).
ActiveSetResult fit_logconcave(const ReducedData& data, const PhiVector& phi0,
                               const FitControl& control = {});

} // namespace logconfit
