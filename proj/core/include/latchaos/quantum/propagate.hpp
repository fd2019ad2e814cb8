#pragma once

#include "latchaos/lattice/params.hpp"
#include "latchaos/quantum/wavefunction.hpp"
#include "latchaos/time_series.hpp"

#include <array>
#include <cstddef>
#include <memory>
#include <optional>

namespace latchaos::quantum {

struct SplitOptions {
    /// Constant added to every diagonal entry of V; only changes a global phase.
    double diagonal_shift = 0.0;
    /// Grid points with xi below the degeneracy threshold use the exact
    /// diagonal exponential. When false such points raise DegeneratePoint.
    bool degenerate_fallback = true;
};

struct Observables {
    double mean_x;
    double mean_p;
    double norm;
    double energy; // <p^2/2> + <V>
    std::array<double, 3> level_populations;
    std::array<double, 3> adiabatic_populations; // NaN where no adiabatic basis exists
};

/// Strang-split propagator exp(-iT dt/2) exp(-iV dt) exp(-iT dt/2) on a fixed
/// grid. Potential factors come from the closed-form adiabatic frame at each
/// grid point and are computed once. Owns its FFT plans and scratch buffers;
/// an instance must not be shared between threads.
class SplitOperator {
public:
    SplitOperator(const SpatialGrid& grid, const lattice::SystemParams& params, double dt,
                  const SplitOptions& options = {});
    ~SplitOperator();
    SplitOperator(SplitOperator&&) noexcept;
    SplitOperator& operator=(SplitOperator&&) noexcept;

    const SpatialGrid& grid() const noexcept;
    double dt() const noexcept;

    /// Applies `steps` Strang steps. Consecutive kinetic half-steps are fused.
    void advance(SpinorWavefunction& psi, std::size_t steps);

    Observables measure(const SpinorWavefunction& psi);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One Strang step (dt may be negative for backward propagation).
SpinorWavefunction split_step(const SpinorWavefunction& psi, const lattice::SystemParams& params, double dt,
                              const SplitOptions& options = {});

/// <p> computed in momentum space.
double mean_momentum(const SpinorWavefunction& psi);

/// Largest time step allowed by the accuracy policy dt * max_x eta(x) <= budget.
/// eta is the half-width of the eigenvalue spectrum, i.e. the part of V that is
/// not a global phase.
double max_stable_dt(const lattice::SystemParams& params, double budget = 0.05);

struct PropagationConfig {
    double t_final = 0.7;
    double dt = 2e-6;
    std::size_t sample_every = 50;
    SplitOptions split{};
    bool enforce_accuracy_policy = true;
    double accuracy_budget = 0.05;
};

struct QuantumRecord {
    TimeSeries mean_x;
    TimeSeries mean_p;
    TimeSeries norm;
    TimeSeries energy;
    std::array<TimeSeries, 3> level_populations;
    std::array<TimeSeries, 3> adiabatic_populations;
    SpinorWavefunction final_state;
};

/// Propagates psi0 to t_final, sampling every sample_every steps (t = 0 included).
QuantumRecord propagate(const SpinorWavefunction& psi0, const lattice::SystemParams& params,
                        const PropagationConfig& config);

struct SensitivityRecord {
    TimeSeries chi;        // |<psi_phi | psi_{phi + delta_phi}>|
    QuantumRecord reference; // the phi arm
    QuantumRecord perturbed; // the phi + delta_phi arm
};

/// Co-propagates two copies of psi0 that differ only in the relative phase.
SensitivityRecord sensitivity_run(const SpinorWavefunction& psi0, const lattice::SystemParams& params,
                                  double delta_phi, const PropagationConfig& config);

} // namespace latchaos::quantum
