#pragma once

#include <stdexcept>
#include <string>

namespace logconfit {

struct InvalidInterval : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StartInfeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuantileAboveRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace logconfit
