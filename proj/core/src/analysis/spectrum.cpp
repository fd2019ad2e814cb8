#include "latchaos/analysis/spectrum.hpp"

#include "../fftw_plan.hpp"
#include "latchaos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace latchaos::analysis {

std::string_view window_name(Window w) noexcept
{
    switch (w) {
    case Window::hann:
        return "hann";
    case Window::rectangular:
        return "rectangular";
    }
    return "unknown";
}

namespace {

double taper(Window w, std::size_t i, std::size_t n)
{
    if (w == Window::rectangular)
        return 1.0;
    return 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1)));
}

} // namespace

Spectrum power_spectrum(const TimeSeries& series, Window window)
{
    const std::size_t n = series.size();
    if (n < 64)
        throw TooShort("power spectrum needs at least 64 samples");
    if (!(std::abs(series.dt_sample) > 0.0))
        throw InvalidArgument("sampling interval must be nonzero");

    double mean = 0.0;
    for (double v : series.values)
        mean += v;
    mean /= static_cast<double>(n);

    const std::size_t bins = n / 2 + 1;
    std::vector<double> in(n);
    for (std::size_t i = 0; i < n; ++i)
        in[i] = (series.values[i] - mean) * taper(window, i, n);

    detail::FftwBuffer out(bins);
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out.raw(), FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    Spectrum s{std::vector<double>(bins), std::vector<double>(bins), window, 0.0};
    const double df = 1.0 / (static_cast<double>(n) * std::abs(series.dt_sample));
    for (std::size_t k = 0; k < bins; ++k) {
        // interior bins stand for both +f and -f
        const bool paired = k != 0 && !(n % 2 == 0 && k == n / 2);
        const double p = std::norm(out.data()[k]) / static_cast<double>(n) * (paired ? 2.0 : 1.0);
        s.frequencies[k] = static_cast<double>(k) * df;
        s.power[k] = p;
        s.total_power += p;
    }
    if (s.total_power > 0.0)
        for (double& p : s.power)
            p /= s.total_power;
    return s;
}

DominantFrequency dominant_frequency(const TimeSeries& series, Window window)
{
    const Spectrum s = power_spectrum(series, window);
    const std::size_t bins = s.power.size();
    std::size_t peak = 1;
    for (std::size_t k = 2; k < bins; ++k)
        if (s.power[k] > s.power[peak])
            peak = k;

    double offset = 0.0;
    if (peak + 1 < bins && s.power[peak - 1] > 0.0 && s.power[peak + 1] > 0.0 && s.power[peak] > 0.0) {
        const double l = std::log(s.power[peak - 1]);
        const double c = std::log(s.power[peak]);
        const double r = std::log(s.power[peak + 1]);
        const double den = l - 2.0 * c + r;
        if (den < 0.0)
            offset = std::clamp(0.5 * (l - r) / den, -0.5, 0.5);
    }
    const double df = s.frequencies[1] - s.frequencies[0];
    const double f = (static_cast<double>(peak) + offset) * df;
    return {f, 2.0 * std::numbers::pi * f};
}

double spectral_entropy(const Spectrum& spectrum)
{
    const std::size_t bins = spectrum.power.size();
    if (bins < 2)
        return 0.0;
    double h = 0.0;
    for (double p : spectrum.power)
        if (p > 0.0)
            h -= p * std::log(p);
    return std::clamp(h / std::log(static_cast<double>(bins)), 0.0, 1.0);
}

} // namespace latchaos::analysis
