#pragma once

#include <string>
#include <vector>

#include "logconfit/activeset.hpp"
#include "logconfit/npmle.hpp"
#include "logconfit/reduce.hpp"

namespace logconfit {

struct FitOptions {
    double eta = 1e-10;
    double inner_tol = 1e-10;
    double npmle_tol = 1e-10;
};

/// The fitted log-concave estimator on its reduced grid, plus diagnostics
/// and the unconstrained MLE values used for initialization and overlays.
struct FitResult {
    std::vector<double> tau;
    PhiVector phi;             // log F at tau
    std::vector<double> F;     // exp(phi)
    std::vector<int> knots;    // 1-based grid indices where the slope changes
    double loglik = 0.0;
    double certificate_residual = 0.0;
    int iterations = 0;
    double wall_time_ms = 0.0;
    std::vector<double> F_un;  // unconstrained MLE at tau
};

/// End-to-end pipeline: dedupe -> reduce -> unconstrained MLE -> least
/// concave majorant start (linear fallback when infeasible) -> active set.
FitResult fit(const std::vector<std::pair<double, double>>& raw,
              const FitOptions& options = {});

/// Same pipeline starting from already-deduped observations.
FitResult fit_weighted(const std::vector<IntervalObservation>& obs,
                       const FitOptions& options = {});

/// F_lc(t): 0 below tau_1, exp of the linear interpolation of phi on the
/// grid, constant F(tau_m) beyond tau_m.
double evaluate_F(const FitResult& fit, double t);

/// Step-function evaluation of the unconstrained MLE carried in the fit.
double evaluate_F_un(const FitResult& fit, double t);

/// Smallest t with F_lc(t) >= p; solves the log-linear segment
/// analytically. Throws QuantileAboveRange for p > F(tau_m).
double quantile(const FitResult& fit, double p);

/// JSON round trip (fields tau, phi, F, knots, loglik,
/// certificate_residual, iterations, wall_time_ms, F_un).
std::string to_json(const FitResult& fit);
FitResult fit_from_json(const std::string& text);

} // namespace logconfit
