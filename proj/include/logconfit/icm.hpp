#pragma once

#include <vector>

#include "logconfit/likelihood.hpp"
#include "logconfit/reduce.hpp"

namespace logconfit {

/// Active-constraint bookkeeping. Constraints are indexed 2..m; the knots
/// are the complement I = {1..m} \ A, always containing 1. A phi in V(A) is
/// determined by its values at the knots via linear interpolation in tau
/// and constant extension beyond the last knot.
struct KnotSet {
    std::vector<int> knots; // 1-based grid indices, sorted, knots.front() == 1
    int m = 0;

    int k() const { return static_cast<int>(knots.size()); }

    /// Build from the active set A (subset of {2..m}).
    static KnotSet from_active(const std::vector<int>& active, int m);

    /// The active set A = {2..m} \ knots.
    std::vector<int> active() const;
};

/// Interpolate knot values onto the full grid: linear between consecutive
/// knots (weights q_{s,i}), constant beyond the last knot.
PhiVector expand(const std::vector<double>& tau, const KnotSet& ks,
                 const std::vector<double>& phi_bar);

/// Chain-rule gradient of the reduced likelihood with respect to the knot
/// values, aggregating grad(l) with the interpolation weights.
std::vector<double> reduced_grad(const ReducedData& data, const PhiVector& phi,
                                 const KnotSet& ks);

/// The ICM diagonal d_s = -sum_j (d2l/dphi_j^2) (dphi_j/dphi_{i(s)})^2,
/// floored at 1e-8 * max(1, max_s raw d_s) so the quadratic model stays
/// well-posed when the likelihood is locally linear.
std::vector<double> reduced_hess_diag(const ReducedData& data,
                                      const PhiVector& phi, const KnotSet& ks);

struct IcmDiagnostics {
    int iterations = 0;
    double final_step = 0.0;
};

/// Maximize l over V(A) ∩ M by iterating diagonal-scaled projected
/// quadratic steps (weighted capped PAVA on the knot values) with
/// step-halving backtracking. Terminates when the sup-norm knot step drops
/// below tol. Throws StartInfeasible / NonConvergence.
PhiVector solve_subproblem(const ReducedData& data, const KnotSet& ks,
                           const PhiVector& phi_start, double tol,
                           IcmDiagnostics* diag = nullptr, int max_iter = 500);

} // namespace logconfit
