#include "logconfit/simharness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "logconfit/estimator.hpp"

namespace logconfit {

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("normal_quantile: p must be in (0, 1)");
    }
    // Acklam's rational approximation, polished by one Halley step.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

namespace {

double raw_cdf(const EventLaw& law, double t) {
    if (t <= 0.0) {
        return 0.0;
    }
    switch (law.type) {
    case LawType::Weibull:
        return -std::expm1(-std::pow(t / law.scale, law.shape));
    case LawType::Exponential:
        return -std::expm1(-t / law.scale);
    case LawType::LogLogistic: {
        const double z = std::pow(t / law.scale, law.shape);
        return z / (1.0 + z);
    }
    case LawType::LogNormal:
        return 0.5 * std::erfc(-(std::log(t) - law.shape) /
                               (law.scale * std::sqrt(2.0)));
    }
    return 0.0;
}

double raw_quantile(const EventLaw& law, double p) {
    switch (law.type) {
    case LawType::Weibull:
        return law.scale * std::pow(-std::log1p(-p), 1.0 / law.shape);
    case LawType::Exponential:
        return -law.scale * std::log1p(-p);
    case LawType::LogLogistic:
        return law.scale * std::pow(p / (1.0 - p), 1.0 / law.shape);
    case LawType::LogNormal:
        return std::exp(law.shape + law.scale * normal_quantile(p));
    }
    return 0.0;
}

// splitmix64, used to derive independent per-replicate streams.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

double EventLaw::cdf(double t) const {
    if (trunc > 0.0) {
        return raw_cdf(*this, std::min(t, trunc)) / raw_cdf(*this, trunc);
    }
    return raw_cdf(*this, t);
}

double EventLaw::quantile(double p) const {
    if (trunc > 0.0) {
        return raw_quantile(*this, p * raw_cdf(*this, trunc));
    }
    return raw_quantile(*this, p);
}

double EventLaw::sample(double u) const {
    return quantile(u);
}

std::pair<double, double> censor(const CensoringScheme& scheme, double x,
                                 std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    switch (scheme.type) {
    case CensoringType::Case2: {
        const double c1 = scheme.c1_max * unif(rng);
        const double c2 = c1 + (scheme.c2_max - c1) * unif(rng);
        if (x <= c1) {
            return {0.0, c1};
        }
        if (x <= c2) {
            return {c1, c2};
        }
        return {c2, kInfTime};
    }
    case CensoringType::CurrentStatus: {
        const double c = -std::log1p(-unif(rng)) / scheme.rate;
        return x <= c ? std::pair{0.0, c} : std::pair{c, kInfTime};
    }
    case CensoringType::CurrentStatusRounded: {
        const double c = -std::log1p(-unif(rng)) / scheme.rate;
        const double rec = std::max(scheme.round_step,
                                    std::round(c / scheme.round_step) *
                                        scheme.round_step);
        return x <= c ? std::pair{0.0, rec} : std::pair{rec, kInfTime};
    }
    }
    throw std::logic_error("censor: unknown scheme");
}

ReportTable run_scenario(const Scenario& sc) {
    if (sc.replicates <= 0 || sc.N <= 0) {
        throw std::invalid_argument("run_scenario: N and replicates must be positive");
    }
    ReportTable table;
    table.scenario = sc;

    std::vector<double> true_q(sc.quantiles.size());
    for (std::size_t i = 0; i < sc.quantiles.size(); ++i) {
        true_q[i] = sc.law.quantile(sc.quantiles[i]);
    }

    for (int rep = 0; rep < sc.replicates; ++rep) {
        std::mt19937_64 rng(mix64(mix64(sc.seed) ^ static_cast<std::uint64_t>(rep)));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<std::pair<double, double>> raw;
        raw.reserve(sc.N);
        for (int i = 0; i < sc.N; ++i) {
            const double x = sc.law.sample(unif(rng));
            raw.push_back(censor(sc.censoring, x, rng));
        }

        FitResult fr;
        try {
            fr = fit(raw);
        } catch (const std::exception& e) {
            throw NonConvergence("run_scenario: replicate " +
                                 std::to_string(rep) + " failed: " + e.what());
        }

        ReplicateRecord rec;
        for (double q : true_q) {
            rec.F_lc_at_q.push_back(evaluate_F(fr, q));
            rec.F_un_at_q.push_back(evaluate_F_un(fr, q));
        }
        if (sc.law.trunc > 0.0) {
            const int M = sc.l1_grid_points;
            double s_lc = 0.0, s_un = 0.0;
            for (int i = 0; i < M; ++i) {
                const double y = sc.law.trunc * (i + 0.5) / M;
                const double f0 = sc.law.cdf(y);
                s_lc += std::abs(evaluate_F(fr, y) - f0);
                s_un += std::abs(evaluate_F_un(fr, y) - f0);
            }
            rec.l1_lc = s_lc / M;
            rec.l1_un = s_un / M;
        } else {
            rec.l1_lc = rec.l1_un = std::nan("");
        }
        rec.knots = static_cast<int>(fr.knots.size());
        rec.fit_ms = fr.wall_time_ms;
        table.replicates.push_back(std::move(rec));
    }

    // Aggregation (ordered by replicate index, deterministic).
    const std::size_t nq = sc.quantiles.size();
    const double R = sc.replicates;
    table.bias_lc.assign(nq, 0.0);
    table.bias_un.assign(nq, 0.0);
    table.sd_lc.assign(nq, 0.0);
    table.sd_un.assign(nq, 0.0);
    for (std::size_t i = 0; i < nq; ++i) {
        double m_lc = 0.0, m_un = 0.0;
        for (const auto& r : table.replicates) {
            m_lc += r.F_lc_at_q[i];
            m_un += r.F_un_at_q[i];
        }
        m_lc /= R;
        m_un /= R;
        table.bias_lc[i] = m_lc - sc.quantiles[i];
        table.bias_un[i] = m_un - sc.quantiles[i];
        if (sc.replicates > 1) {
            double v_lc = 0.0, v_un = 0.0;
            for (const auto& r : table.replicates) {
                v_lc += (r.F_lc_at_q[i] - m_lc) * (r.F_lc_at_q[i] - m_lc);
                v_un += (r.F_un_at_q[i] - m_un) * (r.F_un_at_q[i] - m_un);
            }
            table.sd_lc[i] = std::sqrt(v_lc / (R - 1));
            table.sd_un[i] = std::sqrt(v_un / (R - 1));
        }
    }
    double kn = 0.0, ms = 0.0;
    for (const auto& r : table.replicates) {
        table.mean_l1_lc += r.l1_lc / R;
        table.mean_l1_un += r.l1_un / R;
        kn += r.knots;
        ms += r.fit_ms;
    }
    table.mean_knots = kn / R;
    table.mean_ms = ms / R;
    if (sc.replicates > 1) {
        double v = 0.0;
        for (const auto& r : table.replicates) {
            v += (r.knots - table.mean_knots) * (r.knots - table.mean_knots);
        }
        table.sd_knots = std::sqrt(v / (R - 1));
    }
    std::vector<double> times;
    times.reserve(table.replicates.size());
    for (const auto& r : table.replicates) {
        times.push_back(r.fit_ms);
    }
    std::sort(times.begin(), times.end());
    const std::size_t h = times.size() / 2;
    table.median_ms = times.size() % 2 ? times[h]
                                       : 0.5 * (times[h - 1] + times[h]);
    return table;
}

std::string ReportTable::to_csv() const {
    std::string s = "quantile,bias_lc_x100,sd_lc_x100,bias_un_x100,sd_un_x100\n";
    char buf[256];
    for (std::size_t i = 0; i < scenario.quantiles.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.4f,%.4f,%.4f,%.4f\n",
                      scenario.quantiles[i], 100.0 * bias_lc[i],
                      100.0 * sd_lc[i], 100.0 * bias_un[i], 100.0 * sd_un[i]);
        s += buf;
    }
    s += "metric,value\n";
    std::snprintf(buf, sizeof(buf), "l1_lc_x100,%.4f\n", 100.0 * mean_l1_lc);
    s += buf;
    std::snprintf(buf, sizeof(buf), "l1_un_x100,%.4f\n", 100.0 * mean_l1_un);
    s += buf;
    std::snprintf(buf, sizeof(buf), "knots_mean,%.4f\nknots_sd,%.4f\n",
                  mean_knots, sd_knots);
    s += buf;
    std::snprintf(buf, sizeof(buf), "t_mean_s,%.4f\nt_median_s,%.4f\n",
                  mean_ms / 1000.0, median_ms / 1000.0);
    s += buf;
    return s;
}

std::string ReportTable::to_text() const {
    char buf[256];
    std::string s = "Est.   ";
    for (double q : scenario.quantiles) {
        std::snprintf(buf, sizeof(buf), "        %4.1f ", q);
        s += buf;
    }
    s += "\nF_lc   ";
    for (std::size_t i = 0; i < scenario.quantiles.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%6.2f (%5.2f)", 100.0 * bias_lc[i],
                      100.0 * sd_lc[i]);
        s += buf;
    }
    s += "\nF_un   ";
    for (std::size_t i = 0; i < scenario.quantiles.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%6.2f (%5.2f)", 100.0 * bias_un[i],
                      100.0 * sd_un[i]);
        s += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "\nknots %.2f (%.2f)  L1_lc x100 %.2f  L1_un x100 %.2f  "
                  "t_mean %.3fs  t_median %.3fs\n",
                  mean_knots, sd_knots, 100.0 * mean_l1_lc, 100.0 * mean_l1_un,
                  mean_ms / 1000.0, median_ms / 1000.0);
    s += buf;
    return s;
}

} // namespace logconfit
