#pragma once

#include "latchaos/time_series.hpp"

#include <string_view>
#include <vector>

namespace latchaos::analysis {

enum class Window { hann, rectangular };

std::string_view window_name(Window w) noexcept;

/// One-sided periodogram. `frequencies` are in cycles per t0. `power` is
/// normalized to unit sum unless the tapered signal is identically zero, in
/// which case every bin is zero and total_power is 0.
struct Spectrum {
    std::vector<double> frequencies;
    std::vector<double> power;
    Window window;
    /// Sum of the unnormalized one-sided power; equals sum_n |w_n (x_n - mean)|^2.
    double total_power;
};

/// Mean-subtracted, tapered periodogram. Throws TooShort below 64 samples.
Spectrum power_spectrum(const TimeSeries& series, Window window = Window::hann);

struct DominantFrequency {
    double cycles;  // per t0
    double angular; // 2 pi * cycles
};

/// Peak of the spectrum (zero-frequency bin excluded), refined by a
/// three-point parabola through the log-power of the peak and its neighbours.
DominantFrequency dominant_frequency(const TimeSeries& series, Window window = Window::hann);

/// Shannon entropy of the normalized power divided by ln(bin count), in [0, 1].
double spectral_entropy(const Spectrum& spectrum);

} // namespace latchaos::analysis
