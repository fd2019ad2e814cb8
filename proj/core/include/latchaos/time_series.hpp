#pragma once

#include <cstddef>
#include <vector>

namespace latchaos {

/// Uniformly sampled real observable: values[i] is taken at t0 + i * dt_sample.
struct TimeSeries {
    double t0 = 0.0;
    double dt_sample = 1.0;
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double time(std::size_t i) const noexcept { return t0 + static_cast<double>(i) * dt_sample; }
    double operator[](std::size_t i) const noexcept { return values[i]; }
};

} // namespace latchaos
