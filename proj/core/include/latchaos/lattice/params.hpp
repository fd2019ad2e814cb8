#pragma once

#include <numbers>

namespace latchaos::lattice {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Control parameters of the three-level atom in two standing waves, in
/// natural units (frequencies in units of 2/t0, lengths in units of the
/// wavelength). The relative phase is stored reduced to [0, 2*pi).
class SystemParams {
public:
    SystemParams(double omega1, double omega2, double delta, double phi, double k = two_pi);

    /// Omega1 = 6e3, Omega2 = 7e3, Delta = 1.5e4, k = 2*pi.
    static SystemParams reference(double phi);

    double omega1() const noexcept { return omega1_; }
    double omega2() const noexcept { return omega2_; }
    double delta() const noexcept { return delta_; }
    double k() const noexcept { return k_; }
    double phi() const noexcept { return phi_; }

    SystemParams with_phi(double phi) const;

    /// Unvalidated copy with both Rabi frequencies switched off (free particle).
    SystemParams without_fields() const;

    friend bool operator==(const SystemParams&, const SystemParams&) = default;

private:
    SystemParams() = default;

    double omega1_ = 0.0;
    double omega2_ = 0.0;
    double delta_ = 0.0;
    double k_ = two_pi;
    double phi_ = 0.0;
};

/// Reduces an angle to [0, 2*pi).
double reduce_phase(double phi) noexcept;

/// CODATA values used for every SI conversion.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double boltzmann = 1.380649e-23;      // J / K
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double helium4_mass = 4.002602 * atomic_mass_unit;
/// 2 3S1 -> 2 3P1 line of helium-4.
inline constexpr double helium4_wavelength = 1.083e-6; // m
} // namespace constants

/// Scales that map natural units onto SI for a given atom and wavelength.
class NaturalUnits {
public:
    NaturalUnits(double wavelength, double mass);

    static NaturalUnits helium4();

    double wavelength() const noexcept { return wavelength_; }
    double mass() const noexcept { return mass_; }

    double time_unit() const noexcept;      // t0 = M lambda^2 / hbar   [s]
    double length_unit() const noexcept;    // x0 = lambda              [m]
    double momentum_unit() const noexcept;  // p0 = hbar / lambda       [kg m / s]
    double frequency_unit() const noexcept; // Omega0 = 2 / t0          [rad / s]

private:
    double wavelength_;
    double mass_;
};

struct PhysicalReport {
    double time_unit_s;
    double length_unit_m;
    double momentum_unit_si;
    double frequency_unit_rad_s;
    double detuning_rad_s;
    double detuning_hz;          // detuning_rad_s / 2 pi
    double omega1_rad_s;
    double omega2_rad_s;
    double recoil_frequency_rad_s; // hbar k_L^2 / 2M with k_L = 2 pi / lambda
    double recoil_momentum_natural; // hbar k_L in units of p0 (= 2 pi)
};

PhysicalReport to_physical(const NaturalUnits& units, const SystemParams& params);

/// Kinetic temperature of a momentum distribution under the two common
/// conventions. Neither is singled out; callers report both.
struct KineticTemperature {
    double from_spread_k;  // sigma_p^2 / (M k_B)
    double from_total_k;   // <p^2> / (M k_B) with <p^2> = mean^2 + sigma^2
};

KineticTemperature kinetic_temperature(const NaturalUnits& units, double mean_p, double sigma_p);

} // namespace latchaos::lattice
