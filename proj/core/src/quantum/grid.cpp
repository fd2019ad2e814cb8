#include "latchaos/quantum/grid.hpp"

#include "latchaos/errors.hpp"

#include <bit>
#include <numbers>

namespace latchaos::quantum {

SpatialGrid::SpatialGrid(std::size_t n, int periods) : n_(n), periods_(periods)
{
    if (n < 4 || !std::has_single_bit(n))
        throw InvalidArgument("grid size must be a power of two >= 4");
    if (periods <= 0)
        throw InvalidArgument("grid length must be a positive number of lattice periods");
}

SpatialGrid SpatialGrid::reference() { return {4096, 8}; }

double SpatialGrid::position(std::size_t i) const noexcept
{
    return -0.5 * length() + static_cast<double>(i) * dx();
}

double SpatialGrid::momentum(std::size_t i) const noexcept
{
    const auto n = static_cast<long long>(n_);
    auto m = static_cast<long long>(i);
    if (m >= n / 2)
        m -= n;
    return 2.0 * std::numbers::pi * static_cast<double>(m) / length();
}

double SpatialGrid::max_momentum() const noexcept
{
    return std::numbers::pi * static_cast<double>(n_) / length();
}

} // namespace latchaos::quantum
