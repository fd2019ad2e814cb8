#pragma once

#include "latchaos/semiclassical/ehrenfest.hpp"

#include <cstdint>
#include <vector>

namespace latchaos::semiclassical {

struct EnsembleSpec {
    std::size_t count = 2000;
    double mean_x = 0.0;
    double mean_p = 25.0;
    double sigma_x = 1.0 / (10.0 * std::numbers::sqrt2);
    double sigma_p = 10.0 / std::numbers::sqrt2;
    std::array<Complex, 3> internal{Complex{1.0, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0}};
    std::uint64_t seed = 20020101;
};

/// Initial condition of trajectory `index`. Each index owns an RNG stream
/// derived from (seed, index), so the ensemble does not depend on the order
/// in which trajectories are integrated. x and p are independent normals.
TrajectoryState sample_member(const EnsembleSpec& spec, std::size_t index);

struct EnsembleResult {
    TimeSeries mean_p;
    TimeSeries mean_x;
    std::size_t count;
};

/// Average of p(t) over independently integrated members. Summation is done in
/// fixed index blocks so the result is bit-identical for any worker count.
/// A failing member raises StepFailure naming its index.
EnsembleResult ensemble_mean_p(const EnsembleSpec& spec, const lattice::SystemParams& params, double t_final,
                               Tolerance tolerance = {}, double sample_dt = 1e-4);

} // namespace latchaos::semiclassical
