#pragma once

#include "latchaos/quantum/grid.hpp"

#include <Eigen/Core>

#include <array>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace latchaos::quantum {

using Complex = std::complex<double>;

/// Three internal-level amplitude arrays on a shared periodic grid,
/// stored component-major (|1> block, |2> block, |3> block).
class SpinorWavefunction {
public:
    explicit SpinorWavefunction(const SpatialGrid& grid);

    const SpatialGrid& grid() const noexcept { return grid_; }

    std::span<Complex> component(int level);
    std::span<const Complex> component(int level) const;
    std::span<Complex> data() noexcept { return data_; }
    std::span<const Complex> data() const noexcept { return data_; }

    /// sum_j sum_m |psi_j(x_m)|^2 dx
    double norm() const;
    std::array<double, 3> populations() const;
    /// Position expectation on the centered box [-L/2, L/2).
    double mean_x() const;

private:
    SpatialGrid grid_;
    std::vector<Complex> data_;
};

struct GaussianPacketSpec {
    double mean_x = 0.0;
    double mean_p = 25.0;
    double sigma_x = 1.0 / (10.0 * std::numbers::sqrt2);
    double sigma_p = 10.0 / std::numbers::sqrt2;
    Eigen::Vector3cd internal = Eigen::Vector3cd::UnitX();

    double uncertainty_product() const noexcept { return sigma_x * sigma_p; }
    /// True when sigma_x sigma_p = 1/2 to 1e-9; other packets are allowed but
    /// their momentum spread is set by sigma_x alone.
    bool is_minimum_uncertainty() const noexcept;
};

/// Minimum-uncertainty Gaussian with spread sigma_x, mean momentum mean_p,
/// centered at mean_x (minimum-image distance on the periodic box).
/// Throws UnresolvableWavepacket when sigma_x < 3 dx and MomentumOverflow
/// when |mean_p| + 5 sigma_p exceeds the grid's momentum range.
SpinorWavefunction init_gaussian(const GaussianPacketSpec& spec, const SpatialGrid& grid);

/// sum_j sum_m conj(a_j) b_j dx; throws GridMismatch.
Complex overlap(const SpinorWavefunction& a, const SpinorWavefunction& b);

} // namespace latchaos::quantum
