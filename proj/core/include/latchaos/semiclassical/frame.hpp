#pragma once

#include "latchaos/semiclassical/ehrenfest.hpp"

#include <Eigen/Core>

namespace latchaos::semiclassical {

/// Force used by the adiabatic-frame equations.
///  - exact: the full transform of -<psi|dV/dx|psi>, i.e. the population-weighted
///    slopes plus the coherence term 2 sum_{i<j} Re(C~i* C~j) A_ij (V_j - V_i),
///    where A = O^T dO/dx;
///  - population_weighted: -(|C~1|^2 dV1/dx + |C~3|^2 dV3/dx) alone, which
///    equals the exact force only when the adiabatic coherences vanish.
enum class FrameForce { exact, population_weighted };

/// State in the adiabatic frame: C~_i = sum_k O_ki C_k with the analytic
/// column orientation.
struct AdiabaticState {
    double x = 0.0;
    double p = 0.0;
    std::array<Complex, 3> c{};
};

AdiabaticState to_adiabatic(const TrajectoryState& s, const lattice::SystemParams& params);
TrajectoryState from_adiabatic(const AdiabaticState& s, const lattice::SystemParams& params);

/// A = O^T dO/dx in the analytic orientation, expressed through the closed-form
/// couplings: A12 = -t12/p, A13 = t13/p, A23 = t23/p.
Eigen::Matrix3d derivative_coupling(const lattice::SystemParams& params, double x);

/// dp/dt in the adiabatic frame.
double adiabatic_force(const AdiabaticState& s, const lattice::SystemParams& params,
                       FrameForce model = FrameForce::exact);

/// d/dt of the adiabatic-frame state: i dC~/dt = [[V1, i t12, -i t13],
/// [-i t12, V2, -i t23], [i t13, i t23, V3]] C~ with dp/dt from adiabatic_force.
AdiabaticState adiabatic_rhs(const AdiabaticState& s, const lattice::SystemParams& params,
                             FrameForce model = FrameForce::exact);

struct FrameComparison {
    double max_position;   // max_t |x_diabatic - x_adiabatic|
    double max_momentum;   // max_t |p_diabatic - p_adiabatic|
    double max_population; // max_t max_i ||C~_i|^2 (mapped) - |C~_i|^2 (integrated)|
    double max_deviation;  // max of the three
    std::array<TimeSeries, 3> adiabatic_populations; // from the adiabatic-frame run
};

/// Integrates the diabatic and adiabatic-frame equations side by side and
/// reports their largest discrepancy at the sample times. Throws
/// DegeneratePoint if the path reaches xi ~ 0.
FrameComparison frame_equivalence_check(const TrajectoryState& state0, const lattice::SystemParams& params,
                                        double t_final, Tolerance tolerance = {}, double sample_dt = 1e-4,
                                        FrameForce model = FrameForce::exact);

} // namespace latchaos::semiclassical
