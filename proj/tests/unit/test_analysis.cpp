#include "doctest.h"

#include "latchaos/analysis/fit.hpp"
#include "latchaos/analysis/spectrum.hpp"
#include "latchaos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

using namespace latchaos;
using namespace latchaos::analysis;
using std::numbers::pi;

namespace {

TimeSeries sampled(std::size_t n, double dt, auto f)
{
    TimeSeries s;
    s.dt_sample = dt;
    s.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        s.values[i] = f(s.time(i));
    return s;
}

} // namespace

TEST_CASE("spectrum of a sinusoid")
{
    const auto s = sampled(8192, 1e-4, [](double t) { return std::sin(2 * pi * 100.0 * t); });
    const auto spec = power_spectrum(s);
    CHECK(spec.window == Window::hann);
    CHECK(window_name(spec.window) == "hann");
    CHECK(spec.frequencies.size() == 4097);
    CHECK(spec.frequencies[1] == doctest::Approx(1.0 / (8192 * 1e-4)));
    CHECK(std::accumulate(spec.power.begin(), spec.power.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*std::min_element(spec.power.begin(), spec.power.end()) >= 0.0);
    const auto peak = std::max_element(spec.power.begin(), spec.power.end()) - spec.power.begin();
    CHECK(std::abs(spec.frequencies[static_cast<std::size_t>(peak)] - 100.0) <= spec.frequencies[1]);

    const auto dom = dominant_frequency(s);
    CHECK(dom.cycles == doctest::Approx(100.0).epsilon(1e-3));
    CHECK(dom.angular == doctest::Approx(2 * pi * dom.cycles));

    // scaling and offset do not move the peak
    auto shifted = s;
    for (auto& v : shifted.values)
        v = 3.5 * v - 12.0;
    CHECK(dominant_frequency(shifted).cycles == doctest::Approx(dom.cycles).epsilon(1e-12));
    CHECK(dominant_frequency(s, Window::rectangular).cycles == doctest::Approx(100.0).epsilon(1e-3));

    // off-bin frequency is refined by the parabola
    const auto off = sampled(8192, 1e-4, [](double t) { return std::cos(2 * pi * 123.4 * t + 0.3); });
    CHECK(std::abs(dominant_frequency(off).cycles - 123.4) < 0.1);
}

TEST_CASE("constant series has no power")
{
    const auto s = sampled(256, 0.01, [](double) { return 4.0; });
    const auto spec = power_spectrum(s);
    CHECK(spec.total_power < 1e-20);
    for (double p : spec.power)
        CHECK(p == 0.0);
}

TEST_CASE("Parseval")
{
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n;
    for (Window w : {Window::hann, Window::rectangular}) {
        const auto s = sampled(1000, 0.5, [&](double) { return n(rng); });
        const double mean = std::accumulate(s.values.begin(), s.values.end(), 0.0) / 1000.0;
        double direct = 0.0;
        for (std::size_t i = 0; i < 1000; ++i) {
            const double win = w == Window::hann ? 0.5 - 0.5 * std::cos(2 * pi * i / 999.0) : 1.0;
            direct += std::pow(win * (s.values[i] - mean), 2);
        }
        CHECK(power_spectrum(s, w).total_power == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("spectral entropy")
{
    Spectrum single{{0, 1, 2, 3}, {0, 1, 0, 0}, Window::hann, 1.0};
    CHECK(spectral_entropy(single) == 0.0);
    Spectrum flat{{0, 1, 2, 3}, {0.25, 0.25, 0.25, 0.25}, Window::hann, 1.0};
    CHECK(spectral_entropy(flat) == doctest::Approx(1.0).epsilon(1e-14));
    Spectrum perm{{0, 1, 2, 3}, {0.1, 0.2, 0.3, 0.4}, Window::hann, 1.0};
    Spectrum perm2{{0, 1, 2, 3}, {0.3, 0.1, 0.4, 0.2}, Window::hann, 1.0};
    CHECK(spectral_entropy(perm) == doctest::Approx(spectral_entropy(perm2)).epsilon(1e-15));

    std::mt19937_64 rng(2);
    std::normal_distribution<double> n;
    const auto noise = sampled(4096, 1e-3, [&](double) { return n(rng); });
    const auto tone = sampled(4096, 1e-3, [](double t) { return std::sin(2 * pi * 50 * t); });
    CHECK(spectral_entropy(power_spectrum(noise)) > 2 * spectral_entropy(power_spectrum(tone)));
}

TEST_CASE("too short")
{
    const auto s = sampled(63, 1.0, [](double t) { return t; });
    CHECK_THROWS_AS(power_spectrum(s), TooShort);
    CHECK_THROWS_AS(dominant_frequency(s), TooShort);
}

TEST_CASE("relaxation time")
{
    const double rate = 5.0, dt = 1e-3;
    const auto s = sampled(2000, dt, [&](double t) { return 25.0 * std::exp(-rate * t); });
    const auto r = relaxation_time(s, 0.2);
    REQUIRE(r.has_value());
    CHECK(std::abs(*r - std::log(5.0) / rate) <= dt);

    const auto osc = sampled(2000, dt, [](double t) { return 25.0 * std::cos(20 * t); });
    CHECK_FALSE(relaxation_time(osc, 0.2).has_value());

    // a late excursion resets the clock
    auto late = s;
    late.values[1500] = 10.0;
    CHECK(*relaxation_time(late, 0.2) == doctest::Approx(1501 * dt));
    CHECK_THROWS_AS(relaxation_time(s, 1.5), InvalidArgument);
}

TEST_CASE("exponent fit")
{
    const auto line = sampled(500, 1e-3, [](double t) { return 50.0 * t - 18.0; });
    const auto f = fit_exponent(line, 0.05, 0.45);
    CHECK(std::abs(f.slope - 50.0) < 1e-9);
    CHECK(f.intercept == doctest::Approx(-18.0).epsilon(1e-10));
    CHECK(f.standard_error < 1e-9);
    CHECK(f.points == 401);

    std::mt19937_64 rng(9);
    std::normal_distribution<double> n;
    // SNR 10 over the window
    const auto noisy = sampled(500, 1e-3, [&](double t) { return 50.0 * t + 2.5 * n(rng); });
    const auto g = fit_exponent(noisy, 0.0, 0.499);
    CHECK(g.standard_error > 0.0);
    CHECK(std::abs(g.slope - 50.0) < 4 * g.standard_error);

    CHECK_THROWS_AS(fit_exponent(line, 0.2, 0.2), DegenerateWindow);
    CHECK_THROWS_AS(fit_exponent(line, 0.2, 0.2015), DegenerateWindow);
}
