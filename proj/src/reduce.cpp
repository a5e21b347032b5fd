#include "logconfit/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

namespace logconfit {

std::vector<IntervalObservation> dedupe(
    const std::vector<std::pair<double, double>>& raw) {
    if (raw.empty()) {
        throw InvalidInterval("dedupe: empty input");
    }
    std::map<std::pair<double, double>, double> counts;
    for (const auto& [left, right] : raw) {
        if (!(left >= 0.0)) {
            throw InvalidInterval("dedupe: negative left endpoint " +
                                  std::to_string(left));
        }
        if (!(left < right)) {
            throw InvalidInterval("dedupe: interval requires left < right, got (" +
                                  std::to_string(left) + ", " +
                                  std::to_string(right) + "]");
        }
        if (left == 0.0 && right == kInfTime) {
            throw InvalidInterval("dedupe: observation (0, inf] carries no information");
        }
        counts[{left, right}] += 1.0;
    }
    std::vector<IntervalObservation> out;
    out.reserve(counts.size());
    for (const auto& [key, w] : counts) {
        out.push_back({key.first, key.second, w});
    }
    return out;
}

ReducedData build_reduced(const std::vector<IntervalObservation>& obs) {
    if (obs.empty()) {
        throw InvalidInterval("build_reduced: empty input");
    }
    double min_r = kInfTime;
    for (const auto& o : obs) {
        min_r = std::min(min_r, o.right);
    }

    // L = {i : L_i < min_j R_j}; their left endpoints leave the grid.
    std::set<double> removed_lefts;
    for (const auto& o : obs) {
        if (o.left < min_r) {
            removed_lefts.insert(o.left);
        }
    }

    std::set<double> grid;
    for (const auto& o : obs) {
        if (o.left > 0.0 && !removed_lefts.contains(o.left)) {
            grid.insert(o.left);
        }
        if (!o.right_censored()) {
            grid.insert(o.right);
        }
    }

    ReducedData rd;
    rd.tau.assign(grid.begin(), grid.end());
    rd.s_star = static_cast<int>(removed_lefts.size());
    const int m = rd.m();
    if (m == 0) {
        throw InvalidInterval(
            "build_reduced: all observations are right-censored; "
            "the likelihood carries no information");
    }

    std::map<double, int> index;
    for (int j = 0; j < m; ++j) {
        index[rd.tau[j]] = j + 1;
    }

    rd.obs.reserve(obs.size());
    for (const auto& o : obs) {
        ReducedObs r;
        r.weight = o.weight;
        const bool in_l = o.left < min_r;
        const bool in_r = o.right_censored();
        r.l = in_l ? 0 : index.at(o.left);
        r.r = in_r ? m + 1 : index.at(o.right);
        if (in_l && in_r) {
            r.cls = ObsClass::Vacuous;
        } else if (in_l) {
            r.cls = ObsClass::LeftTail;
        } else if (in_r) {
            r.cls = ObsClass::RightCensored;
        } else {
            r.cls = ObsClass::Interior;
        }
        rd.obs.push_back(r);
        rd.total_weight += o.weight;
    }
    return rd;
}

} // namespace logconfit
