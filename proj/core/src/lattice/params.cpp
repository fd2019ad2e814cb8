#include "latchaos/lattice/params.hpp"

#include "latchaos/errors.hpp"

#include <cmath>
#include <string>

namespace latchaos::lattice {

double reduce_phase(double phi) noexcept
{
    double r = std::fmod(phi, two_pi);
    if (r < 0.0)
        r += two_pi;
    // fmod of a value just below a multiple of 2 pi can round up to 2 pi
    if (r >= two_pi)
        r = 0.0;
    return r;
}

SystemParams::SystemParams(double omega1, double omega2, double delta, double phi, double k)
    : omega1_(omega1), omega2_(omega2), delta_(delta), k_(k), phi_(reduce_phase(phi))
{
    if (!(omega1 > 0.0) || !(omega2 > 0.0))
        throw InvalidArgument("Rabi frequencies must be positive");
    if (!(k > 0.0))
        throw InvalidArgument("wavevector must be positive");
    if (!std::isfinite(delta) || !std::isfinite(phi))
        throw InvalidArgument("detuning and phase must be finite");
}

SystemParams SystemParams::reference(double phi)
{
    return {6.0e3, 7.0e3, 1.5e4, phi};
}

SystemParams SystemParams::with_phi(double phi) const
{
    SystemParams copy = *this;
    copy.phi_ = reduce_phase(phi);
    return copy;
}

SystemParams SystemParams::without_fields() const
{
    SystemParams copy = *this;
    copy.omega1_ = 0.0;
    copy.omega2_ = 0.0;
    return copy;
}

NaturalUnits::NaturalUnits(double wavelength, double mass) : wavelength_(wavelength), mass_(mass)
{
    if (!(wavelength > 0.0) || !(mass > 0.0))
        throw InvalidArgument("wavelength and mass must be positive");
}

NaturalUnits NaturalUnits::helium4()
{
    return {constants::helium4_wavelength, constants::helium4_mass};
}

double NaturalUnits::time_unit() const noexcept
{
    return mass_ * wavelength_ * wavelength_ / constants::hbar;
}

double NaturalUnits::length_unit() const noexcept { return wavelength_; }

double NaturalUnits::momentum_unit() const noexcept { return constants::hbar / wavelength_; }

double NaturalUnits::frequency_unit() const noexcept { return 2.0 / time_unit(); }

PhysicalReport to_physical(const NaturalUnits& units, const SystemParams& params)
{
    const double w0 = units.frequency_unit();
    const double kl = two_pi / units.wavelength();
    PhysicalReport r{};
    r.time_unit_s = units.time_unit();
    r.length_unit_m = units.length_unit();
    r.momentum_unit_si = units.momentum_unit();
    r.frequency_unit_rad_s = w0;
    r.detuning_rad_s = params.delta() * w0;
    r.detuning_hz = r.detuning_rad_s / two_pi;
    r.omega1_rad_s = params.omega1() * w0;
    r.omega2_rad_s = params.omega2() * w0;
    r.recoil_frequency_rad_s = constants::hbar * kl * kl / (2.0 * units.mass());
    r.recoil_momentum_natural = constants::hbar * kl / units.momentum_unit();
    return r;
}

KineticTemperature kinetic_temperature(const NaturalUnits& units, double mean_p, double sigma_p)
{
    const double p0 = units.momentum_unit();
    const double scale = p0 * p0 / (units.mass() * constants::boltzmann);
    return {sigma_p * sigma_p * scale, (mean_p * mean_p + sigma_p * sigma_p) * scale};
}

} // namespace latchaos::lattice
