#include "latchaos/analysis/fit.hpp"

#include "latchaos/errors.hpp"

#include <cmath>

namespace latchaos::analysis {

std::optional<double> relaxation_time(const TimeSeries& series, double threshold)
{
    if (!(threshold > 0.0 && threshold < 1.0))
        throw InvalidArgument("threshold fraction must lie in (0, 1)");
    if (series.size() == 0)
        return std::nullopt;
    const double bound = threshold * std::abs(series.values.front());
    // walk back from the end to find where the tail starts staying below bound
    std::size_t first = series.size();
    while (first > 0 && std::abs(series.values[first - 1]) < bound)
        --first;
    if (first == series.size())
        return std::nullopt;
    return series.time(first);
}

SlopeFit fit_exponent(const TimeSeries& growth_log, double t_start, double t_end)
{
    if (!(t_end > t_start))
        throw DegenerateWindow("fit window must have positive length");
    double st = 0.0, sv = 0.0, stt = 0.0, stv = 0.0;
    std::size_t m = 0;
    const double slack = 1e-9 * std::abs(growth_log.dt_sample);
    for (std::size_t i = 0; i < growth_log.size(); ++i) {
        const double t = growth_log.time(i);
        if (t < t_start - slack || t > t_end + slack)
            continue;
        const double v = growth_log.values[i];
        st += t;
        sv += v;
        stt += t * t;
        stv += t * v;
        ++m;
    }
    if (m < 3)
        throw DegenerateWindow("fit window holds fewer than three samples");
    const double dm = static_cast<double>(m);
    const double tbar = st / dm;
    const double vbar = sv / dm;
    const double sxx = stt - dm * tbar * tbar;
    if (!(sxx > 0.0))
        throw DegenerateWindow("fit window has no time spread");
    const double slope = (stv - dm * tbar * vbar) / sxx;
    const double intercept = vbar - slope * tbar;

    double rss = 0.0;
    for (std::size_t i = 0; i < growth_log.size(); ++i) {
        const double t = growth_log.time(i);
        if (t < t_start - slack || t > t_end + slack)
            continue;
        const double r = growth_log.values[i] - (intercept + slope * t);
        rss += r * r;
    }
    const double se = std::sqrt(rss / (dm - 2.0) / sxx);
    return {slope, se, intercept, m};
}

} // namespace latchaos::analysis
