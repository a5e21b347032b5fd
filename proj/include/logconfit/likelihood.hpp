#pragma once

#include <vector>

#include "logconfit/reduce.hpp"

namespace logconfit {

/// The optimization variable: values of log F at tau_1..tau_m. The implicit
/// conventions phi_0 = -inf and phi_{m+1} = 0 are applied by the evaluators.
using PhiVector = std::vector<double>;

/// Value of phi_j for j in 1..m+1 under the boundary convention.
inline double phi_at(const PhiVector& phi, int j) {
    return j == static_cast<int>(phi.size()) + 1 ? 0.0 : phi[j - 1];
}

/// Log-likelihood l(phi) over the reduced data. Returns -inf outside
/// dom(l), i.e. when some observation has a nonpositive probability mass.
/// O(n) in the number of distinct observations.
double loglik(const ReducedData& data, const PhiVector& phi);

/// Gradient of l. Requires phi in dom(l); throws std::domain_error at the
/// boundary. One pass over the observations.
std::vector<double> grad(const ReducedData& data, const PhiVector& phi);

/// Diagonal of the Hessian of l; all components <= 0.
std::vector<double> hess_diag(const ReducedData& data, const PhiVector& phi);

/// l as a function of the distribution values F_j = F(tau_j) directly,
/// used by the unconstrained MLE which works on the probability scale.
double loglik_F(const ReducedData& data, const std::vector<double>& F);

} // namespace logconfit
