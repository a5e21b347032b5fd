#include "logconfit/isotonic.hpp"

#include <algorithm>
#include <stdexcept>

namespace logconfit {

std::vector<double> pava_increasing(const WeightedSequence& seq) {
    const std::size_t k = seq.targets.size();
    if (seq.weights.size() != k) {
        throw std::invalid_argument("pava: targets/weights length mismatch");
    }
    for (double w : seq.weights) {
        if (!(w > 0.0)) {
            throw std::invalid_argument("pava: weights must be positive");
        }
    }

    // Stack of pooled blocks: (mean, total weight, length).
    struct Block {
        double mean;
        double weight;
        std::size_t len;
    };
    std::vector<Block> blocks;
    blocks.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        Block b{seq.targets[i], seq.weights[i], 1};
        while (!blocks.empty() && blocks.back().mean >= b.mean) {
            const Block& prev = blocks.back();
            const double w = prev.weight + b.weight;
            b.mean = (prev.weight * prev.mean + b.weight * b.mean) / w;
            b.weight = w;
            b.len += prev.len;
            blocks.pop_back();
        }
        blocks.push_back(b);
    }

    std::vector<double> out(k);
    std::size_t pos = 0;
    for (const Block& b : blocks) {
        std::fill_n(out.begin() + pos, b.len, b.mean);
        pos += b.len;
    }
    return out;
}

std::vector<double> pava_increasing_capped(const WeightedSequence& seq,
                                           double cap) {
    std::vector<double> out = pava_increasing(seq);
    for (double& x : out) {
        x = std::min(x, cap);
    }
    return out;
}

} // namespace logconfit
