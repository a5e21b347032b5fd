#pragma once

#include <limits>
#include <vector>

#include "logconfit/errors.hpp"

namespace logconfit {

inline constexpr double kInfTime = std::numeric_limits<double>::infinity();

/// One censoring interval (left, right] with a multiplicity weight.
/// right == kInfTime encodes right-censoring; it is a sentinel, never an
/// operand of arithmetic.
struct IntervalObservation {
    double left = 0.0;
    double right = kInfTime;
    double weight = 1.0;

    bool right_censored() const { return right == kInfTime; }
};

/// Class of an observation under the index sets L (left endpoint removed in
/// the preliminary reduction) and R (right endpoint at infinity).
enum class ObsClass {
    LeftTail,       // L ∩ Rᶜ: contributes w·φ_r
    RightCensored,  // Lᶜ ∩ R: contributes w·log(1 − e^{φ_l})
    Interior,       // Lᶜ ∩ Rᶜ: contributes w·log(e^{φ_r} − e^{φ_l})
    Vacuous,        // L ∩ R: contributes 0, kept only for weight accounting
};

/// Observation mapped onto the reduced grid. Indices are 1-based into the
/// tau grid: l == 0 means "below tau_1" (members of L), r == m+1 means
/// infinity (members of R). Always r > l.
struct ReducedObs {
    int l = 0;
    int r = 0;
    double weight = 1.0;
    ObsClass cls = ObsClass::Interior;
};

/// Deduplicated, reduced problem: the finite time grid tau_1 < ... < tau_m
/// (tau_0 = 0 and tau_{m+1} = inf are implicit), index pairs per
/// observation, and the count of left endpoints removed by the reduction.
struct ReducedData {
    std::vector<double> tau;
    std::vector<ReducedObs> obs;
    int s_star = 0;
    double total_weight = 0.0;

    int m() const { return static_cast<int>(tau.size()); }
};

/// Collapse raw (left, right] pairs into weighted distinct intervals,
/// sorted by (left, right). Rejects left >= right, left < 0, the vacuous
/// observation (0, inf], and empty input.
std::vector<IntervalObservation> dedupe(
    const std::vector<std::pair<double, double>>& raw);

/// Build the reduced grid and index structure from deduped observations:
/// drop {L_i : L_i < min_j R_j} from the grid, assign (l, r) index pairs
/// and class tags.
ReducedData build_reduced(const std::vector<IntervalObservation>& obs);

} // namespace logconfit
