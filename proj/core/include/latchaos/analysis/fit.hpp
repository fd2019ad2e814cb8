#pragma once

#include "latchaos/time_series.hpp"

#include <optional>

namespace latchaos::analysis {

/// First sample time after which |value| stays strictly below
/// threshold * |value(0)| for the rest of the series; nullopt if never.
std::optional<double> relaxation_time(const TimeSeries& series, double threshold);

struct SlopeFit {
    double slope;
    double standard_error;
    double intercept;
    std::size_t points;
};

/// Ordinary least-squares slope of the samples with t in [t_start, t_end].
/// Throws DegenerateWindow when fewer than three samples fall inside.
SlopeFit fit_exponent(const TimeSeries& growth_log, double t_start, double t_end);

} // namespace latchaos::analysis
