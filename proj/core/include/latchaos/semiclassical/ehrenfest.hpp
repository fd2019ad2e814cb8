#pragma once

#include "latchaos/lattice/params.hpp"
#include "latchaos/semiclassical/dopri5.hpp"
#include "latchaos/time_series.hpp"

#include <array>
#include <complex>

namespace latchaos::semiclassical {

using Complex = std::complex<double>;

/// Classical phase-space point plus the internal amplitudes (C1, C2, C3).
struct TrajectoryState {
    double x = 0.0;
    double p = 0.0;
    std::array<Complex, 3> c{Complex{1.0, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0}};

    double internal_norm() const noexcept;
};

/// Flat layout used by the integrator: x, p, Re C1, Im C1, Re C2, Im C2, Re C3, Im C3.
using PackedState = std::array<double, 8>;
PackedState pack(const TrajectoryState& s) noexcept;
TrajectoryState unpack(const PackedState& y) noexcept;

/// Time derivative of the mixed classical-quantum equations: dx/dt = p,
/// dp/dt = -<psi|dV/dx|psi>, i dC/dt = V(x) C. The result is a derivative,
/// stored in the same layout as the state.
TrajectoryState ehrenfest_rhs(const TrajectoryState& state, const lattice::SystemParams& params);

PackedState ehrenfest_rhs_packed(const PackedState& y, const lattice::SystemParams& params) noexcept;

/// p^2/2 + <psi|V(x)|psi>, conserved by the exact flow.
double ehrenfest_energy(const TrajectoryState& state, const lattice::SystemParams& params);

struct TrajectoryRecord {
    TimeSeries x;
    TimeSeries p;
    std::array<TimeSeries, 3> populations;
    TimeSeries energy;
    TimeSeries norm;
    TrajectoryState final_state;
    StepStats stats;
};

/// Adaptive Dormand-Prince integration to t_final (negative runs backward),
/// sampling every |sample_dt|. The internal amplitudes are never renormalized.
TrajectoryRecord integrate(const TrajectoryState& state0, const lattice::SystemParams& params, double t_final,
                           Tolerance tolerance = {}, double sample_dt = 1e-4);

} // namespace latchaos::semiclassical
