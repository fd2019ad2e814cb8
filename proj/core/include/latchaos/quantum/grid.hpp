#pragma once

#include <cstddef>

namespace latchaos::quantum {

/// Periodic grid of n points on [-L/2, L/2). L is an integer number of
/// lattice periods so the potential is periodic on the box. Momenta follow
/// the FFT ordering p_m = 2 pi m / L with symmetric wraparound.
class SpatialGrid {
public:
    SpatialGrid(std::size_t n, int periods);

    /// n = 4096 over 8 periods.
    static SpatialGrid reference();

    std::size_t size() const noexcept { return n_; }
    int periods() const noexcept { return periods_; }
    double length() const noexcept { return static_cast<double>(periods_); }
    double dx() const noexcept { return length() / static_cast<double>(n_); }
    double position(std::size_t i) const noexcept;
    double momentum(std::size_t i) const noexcept;
    /// pi n / L, the largest representable |p|.
    double max_momentum() const noexcept;

    friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;

private:
    std::size_t n_;
    int periods_;
};

} // namespace latchaos::quantum
