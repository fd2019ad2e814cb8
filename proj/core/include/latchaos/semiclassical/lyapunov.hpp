#pragma once

#include "latchaos/semiclassical/ehrenfest.hpp"

#include <cstddef>

namespace latchaos::semiclassical {

struct LyapunovConfig {
    double delta0 = 1e-8;          // initial (x, p) separation, natural units
    double renorm_interval = 0.002;
    double t_total = 0.7;
    double discard_fraction = 0.1; // transient excluded from the estimate
    Tolerance tolerance{};
};

struct LyapunovEstimate {
    double lambda;          // 1 / t0
    double fit_start;
    double fit_end;
    std::size_t renorm_count;
    /// ln of the accumulated (never renormalized) separation at each
    /// renormalization time, starting with ln(delta0) at t = 0.
    TimeSeries growth_log;
};

/// Two-trajectory (Benettin) estimate. The companion starts displaced by
/// delta0 along x; the separation is measured in (x, p) only and the whole
/// difference vector, internal amplitudes included, is rescaled back to
/// delta0 every renorm_interval. Both trajectories share one adaptive step
/// sequence so integration error does not masquerade as separation.
LyapunovEstimate lyapunov(const TrajectoryState& state0, const lattice::SystemParams& params,
                          const LyapunovConfig& config = {});

} // namespace latchaos::semiclassical
