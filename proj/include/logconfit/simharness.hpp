#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "logconfit/reduce.hpp"

namespace logconfit {

enum class LawType { Weibull, Exponential, LogLogistic, LogNormal };

/// Event-time law, optionally truncated to [0, trunc] (trunc == 0 means
/// untruncated). shape/scale follow the usual conventions per family; for
/// the log-normal they are the log-scale mean and standard deviation.
struct EventLaw {
    LawType type = LawType::Weibull;
    double shape = 1.0;
    double scale = 1.0;
    double trunc = 0.0;

    double cdf(double t) const;      // truncated CDF when trunc > 0
    double quantile(double p) const; // inverse of cdf
    double sample(double u) const;   // inverse-CDF transform of u ~ U(0,1)
};

enum class CensoringType { Case2, CurrentStatus, CurrentStatusRounded };

/// Censoring mechanism. Case2: C1 ~ U(0, c1_max), C2 ~ U(C1, c2_max).
/// CurrentStatus: a single inspection C ~ Exp(rate). The rounded variant
/// records C to the nearest multiple of round_step (floored at one step);
/// the event comparison still uses the true C.
struct CensoringScheme {
    CensoringType type = CensoringType::Case2;
    double c1_max = 1.0;
    double c2_max = 2.0;
    double rate = 1.0;
    double round_step = 0.1;
};

std::pair<double, double> censor(const CensoringScheme& scheme, double x,
                                 std::mt19937_64& rng);

struct Scenario {
    EventLaw law;
    CensoringScheme censoring;
    int N = 1000;
    int replicates = 100;
    std::uint64_t seed = 0;
    std::vector<double> quantiles = {0.1, 0.3, 0.5, 0.7, 0.9};
    int l1_grid_points = 1000;
};

struct ReplicateRecord {
    std::vector<double> F_lc_at_q;
    std::vector<double> F_un_at_q;
    double l1_lc = 0.0; // NaN when the law is untruncated
    double l1_un = 0.0;
    int knots = 0;
    double fit_ms = 0.0;
};

struct ReportTable {
    Scenario scenario;
    std::vector<ReplicateRecord> replicates;

    // Aggregates, bias/SD/L1 in natural units (tables print x100).
    std::vector<double> bias_lc, sd_lc, bias_un, sd_un;
    double mean_l1_lc = 0.0, mean_l1_un = 0.0;
    double mean_knots = 0.0, sd_knots = 0.0;
    double mean_ms = 0.0, median_ms = 0.0;

    std::string to_csv() const;
    std::string to_text() const;
};

/// Run all replicates of a scenario and aggregate. Per-replicate RNG
/// streams are derived from (seed, replicate index), so results do not
/// depend on execution order. A replicate failure aborts the table.
ReportTable run_scenario(const Scenario& sc);

/// Standard normal quantile function (needed for log-normal sampling).
double normal_quantile(double p);

} // namespace logconfit
