#pragma once

#include <vector>

#include "logconfit/likelihood.hpp"
#include "logconfit/reduce.hpp"

namespace logconfit {

/// Unconstrained NPMLE of the distribution function: a step function with
/// jumps on the reduced grid. F holds the (right-continuous) values
/// F(tau_1)..F(tau_m); jump_points/values list the strict increases only.
struct StepEstimate {
    std::vector<double> F;
    std::vector<double> jump_points;
    std::vector<double> values;
    int iterations = 0;
    double self_consistency_residual = 0.0;
};

/// Maximize sum w_i log(F(R_i) - F(L_i)) over all distribution functions
/// by EM (self-consistency) steps interleaved with diagonal-metric ICM
/// steps on the cumulative scale, until the sup-norm change drops below
/// tol. Throws NonConvergence.
StepEstimate fit_unconstrained(const ReducedData& data, double tol = 1e-10,
                               int max_iter = 20000);

/// Least concave majorant of (tau_j, log F_un(tau_j)) evaluated on the
/// grid and clamped to <= 0. The result is concave, nondecreasing, and
/// lies in K; it may still sit outside dom(l), in which case the caller
/// falls back to a linear start.
PhiVector lcm_log_init(const StepEstimate& un, const ReducedData& data);

/// Deterministic fallback start: strictly increasing, linear in tau,
/// strictly below 0. Always inside K ∩ dom(l).
PhiVector linear_fallback_init(const ReducedData& data);

} // namespace logconfit
