#pragma once

#include <vector>

namespace logconfit {

/// Targets and positive weights for a monotone least-squares problem.
struct WeightedSequence {
    std::vector<double> targets;
    std::vector<double> weights;
};

/// Pool-adjacent-violators: the unique minimizer of
/// sum_i w_i (x_i - y_i)^2 over nondecreasing x, in O(k).
std::vector<double> pava_increasing(const WeightedSequence& seq);

/// Nondecreasing regression with the additional bound x_i <= cap,
/// computed as elementwise min(pava_increasing(seq), cap).
std::vector<double> pava_increasing_capped(const WeightedSequence& seq,
                                           double cap);

} // namespace logconfit
