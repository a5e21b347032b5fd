#include "logconfit/estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "logconfit/errors.hpp"

namespace logconfit {

FitResult fit_weighted(const std::vector<IntervalObservation>& obs,
                       const FitOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    const ReducedData data = build_reduced(obs);

    const StepEstimate un = fit_unconstrained(data, options.npmle_tol);
    PhiVector phi0 = lcm_log_init(un, data);
    if (!std::isfinite(loglik(data, phi0))) {
        phi0 = linear_fallback_init(data);
    }

    FitControl control;
    control.eta = options.eta;
    control.inner_tol = options.inner_tol;
    ActiveSetResult as = fit_logconcave(data, phi0, control);

    FitResult out;
    out.tau = data.tau;
    out.phi = std::move(as.phi);
    out.F.resize(out.phi.size());
    std::transform(out.phi.begin(), out.phi.end(), out.F.begin(),
                   [](double v) { return std::exp(v); });
    out.knots = as.knots.knots;
    out.loglik = as.loglik;
    out.certificate_residual =
        std::max(as.certificate_active, as.certificate_knots);
    out.iterations = as.outer_iterations;
    out.F_un = un.F;
    out.wall_time_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t0)
            .count();
    return out;
}

FitResult fit(const std::vector<std::pair<double, double>>& raw,
              const FitOptions& options) {
    return fit_weighted(dedupe(raw), options);
}

double evaluate_F(const FitResult& fit, double t) {
    const auto& tau = fit.tau;
    const int m = static_cast<int>(tau.size());
    if (t < tau.front()) {
        return 0.0;
    }
    if (t >= tau.back()) {
        return fit.F[m - 1];
    }
    const auto it = std::upper_bound(tau.begin(), tau.end(), t);
    const int i = static_cast<int>(it - tau.begin()); // tau[i-1] <= t < tau[i]
    const double w = (tau[i] - t) / (tau[i] - tau[i - 1]);
    return std::exp(w * fit.phi[i - 1] + (1.0 - w) * fit.phi[i]);
}

double evaluate_F_un(const FitResult& fit, double t) {
    const auto& tau = fit.tau;
    if (t < tau.front()) {
        return 0.0;
    }
    const auto it = std::upper_bound(tau.begin(), tau.end(), t);
    return fit.F_un[it - tau.begin() - 1];
}

double quantile(const FitResult& fit, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("quantile: p must be in (0, 1)");
    }
    const int m = static_cast<int>(fit.tau.size());
    if (p > fit.F[m - 1]) {
        throw QuantileAboveRange("quantile: p above F(tau_m)");
    }
    if (p <= fit.F[0]) {
        return fit.tau[0];
    }
    const auto it = std::lower_bound(fit.F.begin(), fit.F.end(), p);
    const int j = static_cast<int>(it - fit.F.begin()); // first F_j >= p
    // F_{j-1} < p <= F_j, so phi is strictly increasing on this segment.
    const double lp = std::log(p);
    return fit.tau[j - 1] + (lp - fit.phi[j - 1]) /
                                (fit.phi[j] - fit.phi[j - 1]) *
                                (fit.tau[j] - fit.tau[j - 1]);
}

std::string to_json(const FitResult& fit) {
    nlohmann::json j;
    j["tau"] = fit.tau;
    j["phi"] = fit.phi;
    j["F"] = fit.F;
    j["knots"] = fit.knots;
    j["loglik"] = fit.loglik;
    j["certificate_residual"] = fit.certificate_residual;
    j["iterations"] = fit.iterations;
    j["wall_time_ms"] = fit.wall_time_ms;
    j["F_un"] = fit.F_un;
    return j.dump(2);
}

FitResult fit_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    FitResult out;
    j.at("tau").get_to(out.tau);
    j.at("phi").get_to(out.phi);
    j.at("F").get_to(out.F);
    j.at("knots").get_to(out.knots);
    j.at("loglik").get_to(out.loglik);
    j.at("certificate_residual").get_to(out.certificate_residual);
    j.at("iterations").get_to(out.iterations);
    j.at("wall_time_ms").get_to(out.wall_time_ms);
    j.at("F_un").get_to(out.F_un);
    return out;
}

} // namespace logconfit
