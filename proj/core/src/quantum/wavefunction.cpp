#include "latchaos/quantum/wavefunction.hpp"

#include "latchaos/errors.hpp"

#include <cmath>
#include <numbers>

namespace latchaos::quantum {

SpinorWavefunction::SpinorWavefunction(const SpatialGrid& grid)
    : grid_(grid), data_(3 * grid.size(), Complex{0.0, 0.0})
{
}

std::span<Complex> SpinorWavefunction::component(int level)
{
    return std::span<Complex>(data_).subspan(static_cast<std::size_t>(level) * grid_.size(), grid_.size());
}

std::span<const Complex> SpinorWavefunction::component(int level) const
{
    return std::span<const Complex>(data_).subspan(static_cast<std::size_t>(level) * grid_.size(), grid_.size());
}

double SpinorWavefunction::norm() const
{
    double s = 0.0;
    for (const auto& c : data_)
        s += std::norm(c);
    return s * grid_.dx();
}

std::array<double, 3> SpinorWavefunction::populations() const
{
    std::array<double, 3> pop{};
    for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (const auto& c : component(j))
            s += std::norm(c);
        pop[j] = s * grid_.dx();
    }
    return pop;
}

double SpinorWavefunction::mean_x() const
{
    const std::size_t n = grid_.size();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        const double w = std::norm(data_[m]) + std::norm(data_[n + m]) + std::norm(data_[2 * n + m]);
        num += grid_.position(m) * w;
        den += w;
    }
    return den > 0.0 ? num / den : 0.0;
}

bool GaussianPacketSpec::is_minimum_uncertainty() const noexcept
{
    return std::abs(uncertainty_product() - 0.5) <= 1e-9;
}

SpinorWavefunction init_gaussian(const GaussianPacketSpec& spec, const SpatialGrid& grid)
{
    if (!(spec.sigma_x > 0.0) || !(spec.sigma_p > 0.0))
        throw InvalidArgument("packet spreads must be positive");
    if (spec.sigma_x < 3.0 * grid.dx())
        throw UnresolvableWavepacket("sigma_x below three grid spacings");
    if (std::abs(spec.mean_p) + 5.0 * spec.sigma_p > grid.max_momentum())
        throw MomentumOverflow("packet momentum exceeds the grid's momentum range");
    const double inorm = spec.internal.norm();
    if (std::abs(inorm - 1.0) > 1e-9)
        throw InvalidArgument("internal state must be unit-norm");

    SpinorWavefunction psi(grid);
    const double len = grid.length();
    const std::size_t n = grid.size();
    const double s2 = spec.sigma_x * spec.sigma_x;
    for (std::size_t m = 0; m < n; ++m) {
        const double x = grid.position(m);
        double d = x - spec.mean_x;
        d -= len * std::round(d / len);
        // the carrier uses the continuous coordinate so phases stay smooth
        // across the periodic seam when mean_p is a grid momentum
        const Complex env = std::exp(Complex{-d * d / (4.0 * s2), spec.mean_p * d});
        for (int j = 0; j < 3; ++j)
            psi.component(j)[m] = spec.internal[j] * env;
    }
    const double scale = 1.0 / std::sqrt(psi.norm());
    for (auto& c : psi.data())
        c *= scale;
    return psi;
}

Complex overlap(const SpinorWavefunction& a, const SpinorWavefunction& b)
{
    if (!(a.grid() == b.grid()))
        throw GridMismatch("overlap of wavefunctions on different grids");
    Complex s{0.0, 0.0};
    const auto da = a.data();
    const auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i)
        s += std::conj(da[i]) * db[i];
    return s * a.grid().dx();
}

} // namespace latchaos::quantum
