#pragma once

#include <cstdint>
#include <vector>

#include "swim/network.hpp"

namespace swim {

/// Data-agnostic comparison baseline: hidden weights drawn i.i.d. standard
/// normal, hidden biases uniform on (-pi, pi), sine activation, linear
/// readout. Deep variants stack the same recipe at every layer.
struct BaselineConfig {
    std::vector<std::size_t> layer_widths;
    double ridge_lambda = 1e-10;
    std::uint64_t seed = 0;

    void validate() const;
};

SampledNetwork fit_random_features(const Matrix& x, const Matrix& y,
                                   const BaselineConfig& cfg);

}  // namespace swim
